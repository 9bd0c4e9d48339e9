//! Flattening in the subsymmetric space `Y`: two disjointly supported
//! normalized vectors whose sum stays well below the triangle-inequality
//! ceiling of 2, and keeps dropping as the inner vector spreads out.
//!
//! Run with `cargo run --release --example tzafriri_flattening`
//! (release: the widest layout has a few hundred support points).

use tsnorm::constructions::CorrespondingFamily;
use tsnorm::spaces::tzafriri_norm;

fn main() {
    println!("interleaved tree layouts with branching (4, q2):");
    println!("{:>6} {:>10} {:>10} {:>12}", "q2", "|x1|", "|x2|", "|x1 + x2|");
    for q2 in [4u64, 8, 16, 32, 64] {
        // x1 lives on the 4 level-1 ranks, x2 on the 4*q2 level-2 ranks;
        // each node is immediately followed by its children, so the two
        // supports interleave tightly.
        let fam = CorrespondingFamily::new(&[4, q2]).unwrap();
        let x1 = &fam.vectors()[0];
        let x2 = &fam.vectors()[1];
        let n1 = tzafriri_norm(x1).unwrap().value.to_f64();
        let n2 = tzafriri_norm(x2).unwrap().value.to_f64();
        let sum = x1.try_add(x2).unwrap();
        let both = tzafriri_norm(&sum).unwrap().value.to_f64();
        println!("{q2:>6} {n1:>10.6} {n2:>10.6} {both:>12.6}");
    }
    println!();
    println!("Both summands are normalized, yet the sum's norm heads toward 1:");
    println!("the partition that certifies |x2| = 1 needs ~4*q2 sets, and at");
    println!("that part count the penalty 1/(2 sqrt(n)) crushes x1's short");
    println!("support, so no single family collects both vectors at height 1.");
}
