//! Property-based invariants of the sequence-space engines.

use proptest::prelude::*;

use tsnorm::scalar::{Scalar, ScalarMode};
use tsnorm::spaces::{tsirelson_norm, SeqSpace};
use tsnorm::vector::{Lp, SparseVector};

/// Raw entries for an exact-mode vector: index, numerator, denominator.
fn entries_strategy() -> impl Strategy<Value = Vec<(u64, i64, i64)>> {
    proptest::collection::vec((1..=30u64, -6..=6i64, 1..=6i64), 1..=6)
}

fn exact_vector(raw: &[(u64, i64, i64)]) -> SparseVector {
    SparseVector::from_entries(
        ScalarMode::Exact,
        raw.iter()
            .map(|&(i, n, d)| (i, Scalar::ratio(n, d).unwrap())),
    )
    .unwrap()
}

fn remap(x: &SparseVector, map: impl Fn(usize, u64) -> u64) -> SparseVector {
    let entries = x
        .support()
        .enumerate()
        .map(|(pos, i)| (map(pos, i), x.coeff(i)));
    SparseVector::from_entries(x.mode(), entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Flipping coefficient signs never changes any of the three norms.
    #[test]
    fn one_unconditionality(raw in entries_strategy(), signs in proptest::collection::vec(any::<bool>(), 6)) {
        let x = exact_vector(&raw);
        let minus_one = Scalar::int(-1);
        let flipped = SparseVector::from_entries(
            ScalarMode::Exact,
            x.support().enumerate().map(|(pos, i)| {
                let c = x.coeff(i);
                let c = if signs[pos % signs.len()] {
                    c.try_mul(&minus_one).unwrap()
                } else {
                    c
                };
                (i, c)
            }),
        ).unwrap();
        // exact in T
        prop_assert_eq!(tsirelson_norm(&x).value, tsirelson_norm(&flipped).value);
        // within float tolerance in S and Y
        let xf = x.to_float_mode();
        let ff = flipped.to_float_mode();
        for space in [SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let a = space.norm(&xf).unwrap().value.to_f64();
            let b = space.norm(&ff).unwrap().value.to_f64();
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    // S and Y are subsymmetric: spreading the support out (order
    // preserved) leaves the norm unchanged.
    #[test]
    fn s_and_y_subsymmetry(raw in entries_strategy(), gaps in proptest::collection::vec(1..=7u64, 6), base in 1..=40u64) {
        let x = exact_vector(&raw).to_float_mode();
        prop_assume!(!x.is_zero());
        let offsets: Vec<u64> = gaps
            .iter()
            .scan(base, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect();
        let spread = remap(&x, |pos, _| offsets[pos]);
        for space in [SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let a = space.norm(&x).unwrap().value.to_f64();
            let b = space.norm(&spread).unwrap().value.to_f64();
            prop_assert!((a - b).abs() <= 1e-9, "{:?}: {} vs {}", space, a, b);
        }
    }

    // In T, moving the whole vector to the right never shrinks the norm:
    // admissibility only loosens as coordinates grow.
    #[test]
    fn t_right_shift_monotone(raw in entries_strategy(), shift in 1..=20u64) {
        let x = exact_vector(&raw);
        let shifted = remap(&x, |_, i| i + shift);
        let before = tsirelson_norm(&x).value.to_f64();
        let after = tsirelson_norm(&shifted).value.to_f64();
        prop_assert!(after >= before - 1e-12, "shift by {}: {} -> {}", shift, before, after);
    }

    // Homogeneity, exactly in T.
    #[test]
    fn homogeneity(raw in entries_strategy(), num in -5..=5i64, den in 1..=5i64) {
        let x = exact_vector(&raw);
        let c = Scalar::ratio(num, den).unwrap();
        let abs_c = Scalar::ratio(num.abs(), den).unwrap();
        let scaled = x.scale(&c).unwrap();
        let lhs = tsirelson_norm(&scaled).value;
        let rhs = tsirelson_norm(&x).value.try_mul(&abs_c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // Every reported witness replays to the reported value.
    #[test]
    fn witness_replay(raw in entries_strategy()) {
        let x = exact_vector(&raw);
        prop_assume!(!x.is_zero());
        let r = tsirelson_norm(&x);
        let replayed = r.witness.unwrap().replay(&x).unwrap();
        prop_assert_eq!(replayed, r.value);

        let xf = x.to_float_mode();
        for space in [SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let r = space.norm(&xf).unwrap();
            let replayed = r.witness.unwrap().replay(&xf).unwrap();
            prop_assert!((replayed.to_f64() - r.value.to_f64()).abs() <= 1e-12);
        }
    }

    // All three norms sit between the sup norm and the l1 norm.
    #[test]
    fn between_sup_and_l1(raw in entries_strategy()) {
        let x = exact_vector(&raw).to_float_mode();
        prop_assume!(!x.is_zero());
        let sup = x.lp_norm(Lp::Infinity).unwrap().to_f64();
        let l1 = x.lp_norm(Lp::Finite(1.0)).unwrap().to_f64();
        for space in [SeqSpace::Tsirelson, SeqSpace::Schlumprecht, SeqSpace::Tzafriri] {
            let v = space.norm(&x).unwrap().value.to_f64();
            prop_assert!(v >= sup - 1e-12 && v <= l1 + 1e-12, "{:?}: {}", space, v);
        }
    }
}
