//! Iterated limits of two-row staircases: the order of the limits
//! matters, and the engine detects sequences whose limits never settle.
//!
//! Run with `cargo run --example iteration_stability`.

use tsnorm::asymptotics::{
    estimate_iterated_limit, type_determining_check, IteratedLimitSpec, Schedule, SeqFamily,
};
use tsnorm::scalar::Scalar;
use tsnorm::spaces::SeqSpace;
use tsnorm::vector::SparseVector;

fn spiky_pair(x_family: SeqFamily, label: &str) {
    // Pair x_n with a short block y_m placed just beyond its support:
    // the pairing m = n^3 + n^2 + 10 is already in the stable regime.
    let tuples: Vec<Vec<u64>> = (1..=3)
        .map(|t| {
            let n = match x_family {
                SeqFamily::Thm43XOdd => 2 * t + 1,
                _ => 2 * t + 2,
            };
            vec![t, n * n * n + n * n + 10]
        })
        .collect();
    let spec = IteratedLimitSpec::identity_order(
        vec![
            (x_family, Scalar::int(1)),
            (SeqFamily::Thm43Y, Scalar::int(1)),
        ],
        Schedule::Explicit(tuples),
        SeqSpace::Tsirelson,
    );
    let est = estimate_iterated_limit(&spec).unwrap();
    println!("{label}: limit = {} (converged: {})", est.value, est.converged);
    for (tuple, value) in &est.trace {
        println!("  indices {tuple:?} -> {value}");
    }
}

fn main() {
    // Two normalized families with the same short companion block.  The
    // two limits differ by exactly 1/8 even though within each family
    // every x_n has norm 1 — the norm remembers the shape of the tail.
    spiky_pair(SeqFamily::Thm43XOdd, "spike + far singleton ");
    spiky_pair(SeqFamily::Thm43XEven, "spike + spread average");

    // A sequence that is NOT type-determining: the staircase values
    // oscillate forever because the spike heights alternate.
    println!();
    let e1 = SparseVector::unit(1);
    let bad = type_determining_check(
        &e1,
        SeqFamily::AlternatingSpike,
        SeqSpace::Tsirelson,
        6,
        1e-9,
    )
    .unwrap();
    println!("alternating spikes stabilized: {}", bad.stabilized);
    println!("  trace: {:?}", bad.trace);

    let good =
        type_determining_check(&e1, SeqFamily::Thm43Y, SeqSpace::Tsirelson, 6, 1e-9).unwrap();
    println!("short blocks stabilized:      {}", good.stabilized);
}
