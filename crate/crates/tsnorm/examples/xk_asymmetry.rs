//! Grid-space asymmetry: the same `k` unit cells score differently
//! depending only on whether their columns increase or decrease with the
//! row index.
//!
//! In `X_k` a permissible collection reads cells in row order along a
//! lexicographically increasing column chain.  With columns increasing,
//! all `k` cells land in one chain group and the norm maximization over
//! the weight sphere gives `k^{1/r}`; with columns decreasing, no chain
//! can pick up two of the cells and the norm collapses to 1.
//!
//! Run with `cargo run --example xk_asymmetry`.

use tsnorm::asymptotics::xk_asymmetry;
use tsnorm::constructions::{xk_anti_diagonal, xk_permissible};
use tsnorm::spaces::{xk_norm, XkConfig};

fn main() {
    // p = 2, q = 4/3, r = 4 (1/q + 1/r = 1, q < p < r)
    let cfg = XkConfig::new(3, 2.0, 4.0 / 3.0, 4.0).unwrap();

    let perm = xk_permissible(3, &[3, 5, 9], &[1.0; 3]).unwrap();
    let anti = xk_anti_diagonal(3, &[9, 5, 3], &[1.0; 3]).unwrap();

    let up = xk_norm(&perm, &cfg).unwrap();
    let down = xk_norm(&anti, &cfg).unwrap();
    println!("columns increasing: |x| = {:.10} (3^(1/4) = {:.10})", up.value, 3f64.powf(0.25));
    println!("  best weights a = {:?}", up.weights);
    println!("  chain groups    = {:?}", up.groups);
    println!("columns decreasing: |x| = {:.10}", down.value);
    println!("  chain groups    = {:?}", down.groups);
    println!();

    // The ratio is independent of where the cells sit, as long as the
    // columns are spread enough to leave room for the dummy indices.
    for (base, spread) in [(3u64, 2u64), (10, 5), (40, 13)] {
        let r = xk_asymmetry(&cfg, base, spread).unwrap();
        println!(
            "base {base:>2}, spread {spread:>2}: identity {:.8} / reversed {:.8} = {:.8}",
            r.identity, r.reversed, r.ratio
        );
    }
}
