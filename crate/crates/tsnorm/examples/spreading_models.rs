//! Spreading-model values: norms of spread-out finite sums, which for
//! the subsymmetric spaces are exact and index-independent.
//!
//! Run with `cargo run --example spreading_models`.

use tsnorm::asymptotics::{spreading_model_value, SeqFamily};
use tsnorm::scalar::Scalar;
use tsnorm::spaces::SeqSpace;

fn main() {
    // |e_{n_1} + ... + e_{n_m}| for far-out spread indices.
    println!("m units, spread far out:");
    println!(
        "{:>4} {:>12} {:>12} {:>12} {:>12}",
        "m", "S", "Y", "T", "sqrt(m)/2"
    );
    for m in [2usize, 4, 9, 16] {
        let ones = vec![Scalar::int(1); m];
        let s = spreading_model_value(SeqFamily::Basis, &ones, 100, SeqSpace::Schlumprecht)
            .unwrap()
            .to_f64();
        let y = spreading_model_value(SeqFamily::Basis, &ones, 100, SeqSpace::Tzafriri)
            .unwrap()
            .to_f64();
        let t = spreading_model_value(SeqFamily::Basis, &ones, 100, SeqSpace::Tsirelson)
            .unwrap()
            .to_f64();
        println!(
            "{m:>4} {s:>12.8} {y:>12.8} {t:>12.8} {:>12.8}",
            (m as f64).sqrt() / 2.0
        );
    }
    println!("  (S: m/log2(m+1); Y: sqrt(m)/2 once m >= 4; T: m/2 far out)");
    println!();

    // Blocks of l1-averages spread the same way: each normalized z_n
    // carries l1 mass 2, and far out the full singleton split is
    // admissible, so m of them score a full m — twice what m far-out
    // units manage.
    println!("m normalized averages z_n, spread far out (T):");
    for m in [2usize, 3, 4] {
        let ones = vec![Scalar::int(1); m];
        let v = spreading_model_value(SeqFamily::ZAverage, &ones, 10, SeqSpace::Tsirelson)
            .unwrap();
        println!("  m = {m}: {v}");
    }
    println!();

    // Non-constant coefficients: subsymmetry means only the multiset of
    // coefficients matters, not where the vectors sit.
    let coeffs: Vec<Scalar> = [1.0, -0.5, 0.25]
        .into_iter()
        .map(Scalar::Float)
        .collect();
    let near = spreading_model_value(SeqFamily::Basis, &coeffs, 50, SeqSpace::Schlumprecht)
        .unwrap()
        .to_f64();
    let far = spreading_model_value(SeqFamily::Basis, &coeffs, 5000, SeqSpace::Schlumprecht)
        .unwrap()
        .to_f64();
    println!("S with coefficients (1, -1/2, 1/4): base 50 -> {near:.10}, base 5000 -> {far:.10}");
}
