//! Rearranging the same multiset of blocks in `S` and comparing norms.
//!
//! `d` copies each of `n` constant blocks (lengths `q_1 < ... < q_n`,
//! every block normalized) are laid out either interleaved (forward) or
//! with equal lengths adjacent (reversed).  The reversed layout admits a
//! clean two-stage partition and its norm is bounded below by
//! `(n / f(n)) * (d / 2)`, `f(k) = log2(k + 1)` — a bound that grows
//! without limit in `n` and `d` while every block stays normalized.
//!
//! Run with `cargo run --release --example schlumprecht_asymmetry`.

use tsnorm::asymptotics::schlumprecht_order_experiment;

fn main() {
    for (n, d, q) in [
        (2usize, 2usize, vec![8u64, 64]),
        (2, 2, vec![8, 128]),
        (2, 3, vec![8, 64]),
    ] {
        let r = schlumprecht_order_experiment(n, d, q.clone()).unwrap();
        println!("n = {n}, d = {d}, block lengths {q:?}");
        println!("  forward  |Sigma|_S = {:.6}", r.forward);
        println!("  reversed |Sigma|_S = {:.6}", r.reversed);
        println!(
            "  ratio {:.6}, lower bound {:.6} (holds: {})",
            r.ratio, r.lower_bound, r.bound_holds
        );
        for (j, (measured, predicted)) in r.group_norms.iter().enumerate() {
            println!(
                "  group u_{}: measured {:.6}, closed form d*f(q)/f(d*q) = {:.6}",
                j + 1,
                measured,
                predicted
            );
        }
        println!();
    }
}
