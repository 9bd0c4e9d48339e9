//! The `T`, `‖·‖_k`, `S` and `Y` engines.

use crate::dp::{self, Choice, DpNum, DpTables, PartitionRule, SchlumprechtRule, TsirelsonRule, TzafririRule};
use crate::scalar::{Scalar, ScalarMode};
use crate::spaces::{EngineError, NormResult, Precision, SpaceTag, FLOAT_TOLERANCE};
use crate::vector::{Interval, SparseVector};
use crate::witness::Witness;

fn build_witness<N: DpNum>(
    tables: &DpTables<N>,
    factor_of: &dyn Fn(usize) -> Scalar,
    i: usize,
    j: usize,
) -> Witness {
    match tables.choices[i][j] {
        Choice::Leaf => Witness::SupLeaf {
            index: tables.coords[i],
        },
        Choice::Suffix => build_witness(tables, factor_of, i + 1, j),
        Choice::Split { parts } => {
            let mids = dp::split_points(tables, i, j, parts);
            let mut children = Vec::with_capacity(parts);
            let mut start = i;
            for g in 0..parts {
                let end = if g + 1 < parts { mids[g] } else { j };
                let interval =
                    Interval::new(tables.coords[start], tables.coords[end]).expect("sorted");
                children.push((interval, build_witness(tables, factor_of, start, end)));
                start = end + 1;
            }
            Witness::Partition {
                factor: factor_of(parts),
                children,
            }
        }
    }
}

fn exact_half(_parts: usize) -> Scalar {
    Scalar::ratio(1, 2).expect("1/2")
}

fn result_from_tables<N: DpNum>(
    tables: &DpTables<N>,
    to_scalar: impl Fn(N) -> Scalar,
    factor_of: &dyn Fn(usize) -> Scalar,
    engine: SpaceTag,
    precision: Precision,
) -> NormResult {
    let n = tables.coords.len();
    NormResult {
        value: to_scalar(tables.value()),
        witness: Some(build_witness(tables, factor_of, 0, n - 1)),
        engine,
        precision,
    }
}

/// Tsirelson norm: `‖x‖ = max(‖x‖_∞, sup ½ Σ ‖E_i x‖)` over admissible
/// families `n <= E_1 < ⋯ < E_n`, `n >= 2`.  Exact in exact mode.
pub fn tsirelson_norm(x: &SparseVector) -> NormResult {
    if x.is_zero() {
        return NormResult::zero(x.mode(), SpaceTag::T);
    }
    match x.mode() {
        ScalarMode::Exact => {
            let (coords, coefs) = x.abs_exact();
            let tables = dp::solve(coords, coefs, &TsirelsonRule, 0);
            result_from_tables(
                &tables,
                Scalar::Exact,
                &exact_half,
                SpaceTag::T,
                Precision::Exact,
            )
        }
        ScalarMode::Float => {
            let (coords, coefs) = x.abs_f64();
            let tables = dp::solve(coords, coefs, &TsirelsonRule, 0);
            result_from_tables(
                &tables,
                Scalar::Float,
                &|_| Scalar::Float(0.5),
                SpaceTag::T,
                Precision::Float {
                    tolerance: FLOAT_TOLERANCE,
                },
            )
        }
    }
}

/// The k-functional `‖x‖_k = sup ½ Σ_{i=1}^k ‖E_i x‖` over exactly `k`
/// successive sets with `k <= E_1`; inner norms are full `T` norms.
pub fn tsirelson_k_norm(x: &SparseVector, k: usize) -> Result<NormResult, EngineError> {
    if k < 2 {
        return Err(EngineError::BadK(k));
    }
    if x.is_zero() {
        return Ok(NormResult::zero(x.mode(), SpaceTag::Tk(k)));
    }
    match x.mode() {
        ScalarMode::Exact => {
            let (coords, coefs) = x.abs_exact();
            let tables = dp::solve(coords, coefs, &TsirelsonRule, k);
            Ok(k_functional(
                &tables,
                k,
                Scalar::Exact,
                &exact_half,
                Precision::Exact,
                ScalarMode::Exact,
            ))
        }
        ScalarMode::Float => {
            let (coords, coefs) = x.abs_f64();
            let tables = dp::solve(coords, coefs, &TsirelsonRule, k);
            Ok(k_functional(
                &tables,
                k,
                Scalar::Float,
                &|_| Scalar::Float(0.5),
                Precision::Float {
                    tolerance: FLOAT_TOLERANCE,
                },
                ScalarMode::Float,
            ))
        }
    }
}

fn k_functional<N: DpNum>(
    tables: &DpTables<N>,
    k: usize,
    to_scalar: impl Fn(N) -> Scalar,
    factor_of: &dyn Fn(usize) -> Scalar,
    precision: Precision,
    mode: ScalarMode,
) -> NormResult {
    let n = tables.coords.len();
    // The k sets need k <= min E_1; sets that miss the support can always
    // be parked beyond it, so at most k parts actually carry support and
    // the first carried point must sit at coordinate >= k.
    let mut best: Option<(N, usize, usize)> = None; // (sum, start t, parts m)
    for t in 0..n {
        if tables.coords[t] < k as u64 {
            continue;
        }
        for (m_idx, sum) in tables.cover_last[t].iter().enumerate() {
            if m_idx + 1 > k {
                break;
            }
            if best.as_ref().map_or(true, |(b, _, _)| sum > b) {
                best = Some((sum.clone(), t, m_idx + 1));
            }
        }
    }
    let Some((sum, t, m)) = best else {
        // whole support sits below coordinate k: every admissible family
        // misses it entirely
        return NormResult::zero(mode, SpaceTag::Tk(k));
    };
    let half = factor_of(2); // factor is 1/2 regardless of part count
    let value = to_scalar(sum)
        .try_mul(&half)
        .expect("uniform scalar modes");
    let children = if m == 1 {
        let interval = Interval::new(tables.coords[t], tables.coords[n - 1]).expect("sorted");
        vec![(interval, build_witness(tables, factor_of, t, n - 1))]
    } else {
        let mids = dp::split_points(tables, t, n - 1, m);
        let mut children = Vec::with_capacity(m);
        let mut start = t;
        for g in 0..m {
            let end = if g + 1 < m { mids[g] } else { n - 1 };
            let interval =
                Interval::new(tables.coords[start], tables.coords[end]).expect("sorted");
            children.push((interval, build_witness(tables, factor_of, start, end)));
            start = end + 1;
        }
        children
    };
    NormResult {
        value,
        witness: Some(Witness::Partition {
            factor: half,
            children,
        }),
        engine: SpaceTag::Tk(k),
        precision,
    }
}

/// Schlumprecht norm: `‖x‖ = max(‖x‖_∞, sup 1/f(k) Σ ‖E_j x‖)` over all
/// `k >= 2` and successive sets, `f(k) = log₂(k+1)`.  Float mode only.
pub fn schlumprecht_norm(x: &SparseVector) -> Result<NormResult, EngineError> {
    float_engine(x, &SchlumprechtRule, SpaceTag::S, |parts| {
        Scalar::Float(1.0 / SchlumprechtRule::f(parts))
    })
}

/// Tzafriri norm (`Y = Ti(2; 1/2)`): `‖x‖ = max(‖x‖_∞, sup 1/(2√n) Σ
/// ‖E_i x‖)`.  The `n = 1` term contributes at most `½‖x‖` and never
/// attains the max, so the engine starts at `n = 2`.  Float mode only.
pub fn tzafriri_norm(x: &SparseVector) -> Result<NormResult, EngineError> {
    float_engine(x, &TzafririRule, SpaceTag::Y, |parts| {
        Scalar::Float(1.0 / (2.0 * (parts as f64).sqrt()))
    })
}

fn float_engine<R: PartitionRule<f64>>(
    x: &SparseVector,
    rule: &R,
    tag: SpaceTag,
    factor_of: impl Fn(usize) -> Scalar,
) -> Result<NormResult, EngineError> {
    if x.mode() == ScalarMode::Exact {
        return Err(EngineError::ExactModeUnsupported { space: tag });
    }
    if x.is_zero() {
        return Ok(NormResult::zero(ScalarMode::Float, tag));
    }
    let (coords, coefs) = x.abs_f64();
    let tables = dp::solve(coords, coefs, rule, 0);
    Ok(result_from_tables(
        &tables,
        Scalar::Float,
        &factor_of,
        tag,
        Precision::Float {
            tolerance: FLOAT_TOLERANCE,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::vector::Lp;

    fn units(range: std::ops::RangeInclusive<u64>) -> SparseVector {
        SparseVector::from_entries(
            ScalarMode::Exact,
            range.map(|i| (i, Scalar::int(1))),
        )
        .unwrap()
    }

    #[test]
    fn t_norm_unit() {
        let r = tsirelson_norm(&SparseVector::unit(1));
        assert_eq!(r.value, Scalar::int(1));
        assert_eq!(r.witness, Some(Witness::SupLeaf { index: 1 }));
    }

    #[test]
    fn t_norm_four_far_units_exact() {
        let r = tsirelson_norm(&units(4..=7));
        assert_eq!(r.value, Scalar::int(2));
        let replay = r.witness.unwrap().replay(&units(4..=7)).unwrap();
        assert_eq!(replay, Scalar::int(2));
    }

    #[test]
    fn t_k_norm_singleton_far_out() {
        for k in 2..=5 {
            let r = tsirelson_k_norm(&SparseVector::unit(10), k).unwrap();
            assert_eq!(r.value, Scalar::ratio(1, 2).unwrap());
        }
    }

    #[test]
    fn t_k_norm_rejects_small_k() {
        assert!(matches!(
            tsirelson_k_norm(&SparseVector::unit(1), 1),
            Err(EngineError::BadK(1))
        ));
    }

    #[test]
    fn t_k_norm_support_below_k_is_zero() {
        let r = tsirelson_k_norm(&SparseVector::unit(2), 5).unwrap();
        assert!(r.value.is_zero());
    }

    #[test]
    fn s_norm_rejects_exact_mode() {
        assert!(matches!(
            schlumprecht_norm(&SparseVector::unit(1)),
            Err(EngineError::ExactModeUnsupported { .. })
        ));
    }

    #[test]
    fn s_norm_pair() {
        let x = units(1..=2).to_float_mode();
        let r = schlumprecht_norm(&x).unwrap();
        let expect = 2.0 / 3f64.log2();
        assert!((r.value.to_f64() - expect).abs() < 1e-12);
        let replay = r.witness.unwrap().replay(&x).unwrap();
        assert!((replay.to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn y_norm_constant_vectors() {
        // closed form: sqrt(n)/2 for n >= 4
        for n in [4u64, 9, 16, 25] {
            let x = units(1..=n).to_float_mode();
            let r = tzafriri_norm(&x).unwrap();
            assert!((r.value.to_f64() - (n as f64).sqrt() / 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn y_norm_small_supports_hit_sup_branch() {
        let x = units(1..=2).to_float_mode();
        let r = tzafriri_norm(&x).unwrap();
        assert_eq!(r.value.to_f64(), 1.0);
    }

    #[test]
    fn norm_between_sup_and_l1() {
        let x = SparseVector::from_entries(
            ScalarMode::Float,
            [
                (2, Scalar::Float(0.3)),
                (5, Scalar::Float(-1.2)),
                (9, Scalar::Float(0.7)),
            ],
        )
        .unwrap();
        let sup = x.lp_norm(Lp::Infinity).unwrap().to_f64();
        let l1 = x.lp_norm(Lp::Finite(1.0)).unwrap().to_f64();
        for value in [
            tsirelson_norm(&x).value.to_f64(),
            schlumprecht_norm(&x).unwrap().value.to_f64(),
            tzafriri_norm(&x).unwrap().value.to_f64(),
        ] {
            assert!(value >= sup - 1e-12 && value <= l1 + 1e-12);
        }
    }
}
