//! Exact Tsirelson norms of simple vectors, with attaining partitions.
//!
//! Run with `cargo run --example tsirelson_basics`.

use tsnorm::scalar::{Scalar, ScalarMode};
use tsnorm::spaces::{tsirelson_k_norm, tsirelson_norm};
use tsnorm::vector::SparseVector;
use tsnorm::constructions::z_average;

fn units(range: std::ops::RangeInclusive<u64>) -> SparseVector {
    SparseVector::from_entries(ScalarMode::Exact, range.map(|i| (i, Scalar::int(1)))).unwrap()
}

fn main() {
    // A single unit vector has norm 1: the sup branch wins.
    let e10 = SparseVector::unit(10);
    println!("|e_10|_T = {}", tsirelson_norm(&e10).value);

    // Far-out blocks of units double: n units at coordinates >= n admit a
    // full n-way split, each part a singleton, at factor 1/2.
    for range in [4..=7u64, 8..=15, 16..=31] {
        let x = units(range.clone());
        let r = tsirelson_norm(&x);
        println!(
            "|e_{} + ... + e_{}|_T = {}",
            range.start(),
            range.end(),
            r.value
        );
        // the witness replays to exactly the reported value
        let replayed = r.witness.unwrap().replay(&x).unwrap();
        assert_eq!(replayed, r.value);
    }

    // Early blocks cannot split: admissibility demands n <= min E_1.
    let early = units(1..=2);
    println!("|e_1 + e_2|_T = {}", tsirelson_norm(&early).value);

    // k-functionals of the normalized l1-averages z_n: exactly k sets,
    // each inner value a full T norm, factor 1/2.  The closed form is
    // (1 + (k-1)/n^2)/2, which tends to 1/2 as n grows.
    println!();
    println!("k-functionals of z_n (limit 1/2):");
    for n in [4u64, 6, 8, 10] {
        let z = z_average(n).unwrap();
        let row: Vec<String> = (2..=4)
            .map(|k| {
                let v = tsirelson_k_norm(&z, k).unwrap().value;
                format!("|z_{n}|_{k} = {v}")
            })
            .collect();
        println!("  {}", row.join("   "));
    }
}
