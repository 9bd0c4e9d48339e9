//! The production engines search only interval partitions; the oracles
//! enumerate arbitrary successive subsets.  These tests pin the two to
//! each other on seeded random inputs, which is the evidence that the
//! interval restriction loses nothing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tsnorm::oracle::{oracle_seq_norm_exact, oracle_seq_norm_f64, oracle_xk_inner};
use tsnorm::scalar::{Scalar, ScalarMode};
use tsnorm::spaces::{tsirelson_norm, xk_inner_value, SeqSpace, XkConfig};
use tsnorm::vector::{GridVector, SparseVector};

fn random_exact(rng: &mut ChaCha8Rng) -> SparseVector {
    let support = rng.gen_range(1..=8usize);
    let entries = (0..support).map(|_| {
        let idx = rng.gen_range(1..=24u64);
        let num = rng.gen_range(-8..=8i64);
        let den = rng.gen_range(1..=8i64);
        (idx, Scalar::ratio(num, den).unwrap())
    });
    SparseVector::from_entries(ScalarMode::Exact, entries).unwrap()
}

fn random_float(rng: &mut ChaCha8Rng) -> SparseVector {
    let support = rng.gen_range(1..=8usize);
    let entries = (0..support).map(|_| {
        let idx = rng.gen_range(1..=24u64);
        (idx, Scalar::Float(rng.gen_range(-2.0..=2.0)))
    });
    SparseVector::from_entries(ScalarMode::Float, entries).unwrap()
}

#[test]
fn tsirelson_interval_dp_matches_exact_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let x = random_exact(&mut rng);
        let engine = tsirelson_norm(&x).value;
        let oracle = Scalar::Exact(oracle_seq_norm_exact(&x));
        assert_eq!(engine, oracle, "x = {x:?}");
    }
}

#[test]
fn float_engines_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let x = random_float(&mut rng);
        for space in [
            SeqSpace::Tsirelson,
            SeqSpace::Schlumprecht,
            SeqSpace::Tzafriri,
        ] {
            let engine = space.norm(&x).unwrap().value.to_f64();
            let oracle = oracle_seq_norm_f64(&x, space);
            assert!(
                (engine - oracle).abs() <= 1e-9,
                "{space:?}: engine {engine} vs oracle {oracle} on {x:?}"
            );
        }
    }
}

#[test]
fn oracle_never_below_engine_on_adversarial_gaps() {
    // vectors with deliberate holes, where a non-interval family would
    // show up first if intervals were actually lossy
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let entries: Vec<(u64, Scalar)> = (0..4)
            .map(|t| {
                let idx = 3 + 5 * t + rng.gen_range(0..2u64);
                (idx, Scalar::Float(rng.gen_range(0.2..=1.5)))
            })
            .collect();
        let x = SparseVector::from_entries(ScalarMode::Float, entries).unwrap();
        let engine = SeqSpace::Tzafriri.norm(&x).unwrap().value.to_f64();
        let oracle = oracle_seq_norm_f64(&x, SeqSpace::Tzafriri);
        assert!((engine - oracle).abs() <= 1e-9);
    }
}

#[test]
fn grid_chain_dp_matches_subset_oracle() {
    let cfg = XkConfig::new(3, 2.0, 4.0 / 3.0, 4.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..25 {
        let cells: Vec<(usize, u64, f64)> = (0..5)
            .map(|_| {
                let row = rng.gen_range(1..=3usize);
                let col = rng.gen_range(row as u64..=10);
                (row, col, rng.gen_range(0.1..=1.0))
            })
            .collect();
        let x = GridVector::new(3, cells).unwrap();
        let a = [
            rng.gen_range(0.1..=1.0),
            rng.gen_range(0.1..=1.0),
            rng.gen_range(0.1..=1.0),
        ];
        let dp = xk_inner_value(&x, &cfg, &a).unwrap();
        let oracle = oracle_xk_inner(&x, &cfg, &a);
        assert!(
            (dp - oracle).abs() <= 1e-9,
            "dp {dp} vs oracle {oracle} on {x:?} with a = {a:?}"
        );
    }
}
