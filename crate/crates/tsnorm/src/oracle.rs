//! Exhaustive reference implementations for small supports.
//!
//! The production engines restrict successive set families to successive
//! intervals.  The oracles here enumerate *arbitrary* successive subsets
//! (and, for the grid spaces, arbitrary column chains), so agreement on
//! random small vectors validates the interval reduction.  Cost is
//! exponential; keep supports at 8 points or fewer.

use num::BigRational;
use std::collections::HashMap;

use crate::dp::{DpNum, PartitionRule, SchlumprechtRule, TsirelsonRule, TzafririRule};
use crate::spaces::{SeqSpace, XkConfig};
use crate::vector::{GridVector, SparseVector};

const MAX_ORACLE_SUPPORT: usize = 16;

struct OracleState<'a, N, R> {
    coords: &'a [u64],
    coefs: &'a [N],
    rule: &'a R,
    norm_memo: Vec<Option<N>>,
    chain_memo: HashMap<(u32, usize), Option<N>>,
}

impl<N: DpNum, R: PartitionRule<N>> OracleState<'_, N, R> {
    /// Norm of the restriction of `x` to the support points in `mask`.
    fn norm_mask(&mut self, mask: u32) -> N {
        if mask == 0 {
            return N::zero();
        }
        if let Some(v) = &self.norm_memo[mask as usize] {
            return v.clone();
        }
        let mut best = N::zero();
        let mut bits = mask;
        while bits != 0 {
            let t = bits.trailing_zeros() as usize;
            if self.coefs[t] > best {
                best = self.coefs[t].clone();
            }
            bits &= bits - 1;
        }
        let count = mask.count_ones() as usize;
        for parts in 2..=count {
            let min_first = self.rule.min_first_coordinate(parts);
            // enumerate the first set here so the admissibility constraint
            // only binds at the head of the family
            let mut first = mask;
            loop {
                let head = first.trailing_zeros() as usize;
                if self.coords[head] >= min_first {
                    let above = high_bits(mask, first);
                    if let Some(tail) = self.chain(above, parts - 1) {
                        let cand = self.norm_mask(first).add_ref(&tail);
                        let cand = self.rule.penalty(parts).mul_ref(&cand);
                        if cand > best {
                            best = cand;
                        }
                    }
                }
                first = (first - 1) & mask;
                if first == 0 {
                    break;
                }
            }
        }
        self.norm_memo[mask as usize] = Some(best.clone());
        best
    }

    /// Best sum of `parts` nonempty successive subsets of `allowed`.
    fn chain(&mut self, allowed: u32, parts: usize) -> Option<N> {
        if parts == 0 {
            return Some(N::zero());
        }
        if (allowed.count_ones() as usize) < parts {
            return None;
        }
        if let Some(v) = self.chain_memo.get(&(allowed, parts)) {
            return v.clone();
        }
        let mut best: Option<N> = None;
        let mut first = allowed;
        loop {
            let above = high_bits(allowed, first);
            if let Some(tail) = self.chain(above, parts - 1) {
                let cand = self.norm_mask(first).add_ref(&tail);
                if best.as_ref().map_or(true, |b| cand > *b) {
                    best = Some(cand);
                }
            }
            first = (first - 1) & allowed;
            if first == 0 {
                break;
            }
        }
        self.chain_memo.insert((allowed, parts), best.clone());
        best
    }
}

/// Bits of `mask` strictly above the highest bit of `sub`.
fn high_bits(mask: u32, sub: u32) -> u32 {
    debug_assert!(sub != 0);
    let top = 31 - sub.leading_zeros();
    if top >= 31 {
        0
    } else {
        mask & !((1u32 << (top + 1)) - 1)
    }
}

fn oracle_norm<N: DpNum, R: PartitionRule<N>>(coords: &[u64], coefs: &[N], rule: &R) -> N {
    let n = coords.len();
    assert!(
        n <= MAX_ORACLE_SUPPORT,
        "oracle is exponential; support {n} exceeds {MAX_ORACLE_SUPPORT}"
    );
    if n == 0 {
        return N::zero();
    }
    let mut state = OracleState {
        coords,
        coefs,
        rule,
        norm_memo: vec![None; 1usize << n],
        chain_memo: HashMap::new(),
    };
    state.norm_mask((1u32 << n) - 1)
}

/// Float-mode exhaustive norm over arbitrary successive set families.
pub fn oracle_seq_norm_f64(x: &SparseVector, space: SeqSpace) -> f64 {
    let (coords, coefs) = x.abs_f64();
    match space {
        SeqSpace::Tsirelson => oracle_norm(&coords, &coefs, &TsirelsonRule),
        SeqSpace::Schlumprecht => oracle_norm(&coords, &coefs, &SchlumprechtRule),
        SeqSpace::Tzafriri => oracle_norm(&coords, &coefs, &TzafririRule),
    }
}

/// Exact exhaustive Tsirelson norm.
pub fn oracle_seq_norm_exact(x: &SparseVector) -> BigRational {
    let (coords, coefs) = x.abs_exact();
    oracle_norm(&coords, &coefs, &TsirelsonRule)
}

/// Brute-force inner value `|x|_(a)`: enumerate every subset of columns
/// `1..=max_col` as the head of the lexicographic column chain (dummy
/// columns beyond the support are free, so nothing after `max_col`
/// matters), assign rows cyclically, and score the groups.  Exponential
/// in `max_col`; intended for grids with max column <= 16.
pub fn oracle_xk_inner(x: &GridVector, cfg: &XkConfig, a: &[f64]) -> f64 {
    let Some(max_col) = x.max_column() else {
        return 0.0;
    };
    assert!(
        max_col <= MAX_ORACLE_SUPPORT as u64,
        "oracle is exponential; max column {max_col} exceeds {MAX_ORACLE_SUPPORT}"
    );
    let k = cfg.k;
    let cells: Vec<(usize, u64, f64)> = x.iter().collect();
    let mut best = 0.0f64;
    for subset in 0u32..(1u32 << max_col) {
        let mut group_sums: Vec<f64> = Vec::new();
        let mut position = 0usize; // index into the lex chain
        for col in 1..=max_col {
            if subset & (1 << (col - 1)) == 0 {
                continue;
            }
            let row = position % k + 1;
            let group = position / k;
            if group_sums.len() <= group {
                group_sums.resize(group + 1, 0.0);
            }
            if let Some(&(_, _, b)) = cells.iter().find(|&&(r, c, _)| r == row && c == col) {
                group_sums[group] += a[row - 1] * b.abs();
            }
            position += 1;
        }
        let total: f64 = group_sums.iter().map(|s| s.powf(cfg.p)).sum();
        let value = total.powf(1.0 / cfg.p);
        if value > best {
            best = value;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Scalar, ScalarMode};
    use crate::spaces::{schlumprecht_norm, tzafriri_norm, xk_inner_value};

    fn units(range: std::ops::RangeInclusive<u64>) -> SparseVector {
        SparseVector::from_entries(ScalarMode::Exact, range.map(|i| (i, Scalar::int(1))))
            .unwrap()
    }

    #[test]
    fn oracle_matches_engine_on_units() {
        let x = units(4..=7);
        assert_eq!(
            oracle_seq_norm_exact(&x),
            BigRational::from_integer(2.into())
        );
        let xf = x.to_float_mode();
        let engine = schlumprecht_norm(&xf).unwrap().value.to_f64();
        let oracle = oracle_seq_norm_f64(&xf, SeqSpace::Schlumprecht);
        assert!((engine - oracle).abs() < 1e-12);
        let engine = tzafriri_norm(&xf).unwrap().value.to_f64();
        let oracle = oracle_seq_norm_f64(&xf, SeqSpace::Tzafriri);
        assert!((engine - oracle).abs() < 1e-12);
    }

    #[test]
    fn oracle_matches_engine_on_mixed_coefficients() {
        let x = SparseVector::from_entries(
            ScalarMode::Float,
            [
                (2, Scalar::Float(0.9)),
                (3, Scalar::Float(-0.4)),
                (5, Scalar::Float(1.1)),
                (6, Scalar::Float(0.2)),
                (9, Scalar::Float(-0.8)),
            ],
        )
        .unwrap();
        for space in [
            SeqSpace::Tsirelson,
            SeqSpace::Schlumprecht,
            SeqSpace::Tzafriri,
        ] {
            let engine = space.norm(&x).unwrap().value.to_f64();
            let oracle = oracle_seq_norm_f64(&x, space);
            assert!(
                (engine - oracle).abs() < 1e-9,
                "{space:?}: engine {engine} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn xk_oracle_matches_chain_dp() {
        let cfg = XkConfig::new(3, 2.0, 4.0 / 3.0, 4.0).unwrap();
        let x = GridVector::new(
            3,
            [(1, 2, 0.7), (2, 3, 1.0), (3, 5, 0.4), (1, 6, 0.9), (2, 7, 0.3)],
        )
        .unwrap();
        let a = [0.5, 0.8, 0.3];
        let dp = xk_inner_value(&x, &cfg, &a).unwrap();
        let oracle = oracle_xk_inner(&x, &cfg, &a);
        assert!((dp - oracle).abs() < 1e-9, "dp {dp} vs oracle {oracle}");
    }
}
