//! Interval dynamic programming for implicitly defined norms.
//!
//! Each of the `T`, `S`, `Y` norms has the form
//! `‖x‖ = max(‖x‖_∞, sup penalty(n) · Σ_{i=1}^n ‖E_i x‖)` over successive
//! set families, possibly with the admissibility constraint
//! `n <= min E_1`.  By 1-unconditionality the sets can be enlarged to
//! intervals without changing the sup (validated against the exhaustive
//! enumeration in [`crate::oracle`]), which turns the sup into a
//! partition DP over sub-intervals of the support.
//!
//! The recursion for the norm of the support slice `i..=j` considers
//! three candidates: the largest coefficient in the slice (via the
//! leaf-at-`i` / drop-`i` decomposition), the norm of the slice `i+1..=j`
//! (families that skip the first point — only ever needed under the
//! admissibility constraint), and partitions that start exactly at `i`
//! and cover through `j`.  Partition sums are built by a split-count
//! table per left endpoint: `b[j][m]` is the best sum of `m` successive
//! parts covering `i..=j`; penalties are applied after the table is
//! built.  Every partition uses strictly smaller intervals, so a single
//! bottom-up pass resolves the implicit equation with no fixed-point
//! iteration.

use num::BigRational;
use num_traits::Zero;

/// Arithmetic the DP needs; implemented for `f64` and `BigRational`.
pub(crate) trait DpNum: Clone + PartialOrd {
    fn zero() -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl DpNum for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

impl DpNum for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// The space-specific part of the implicit equation.
pub(crate) trait PartitionRule<N: DpNum> {
    /// Penalty applied to a sum over `parts` parts (e.g. `1/2`, `1/f(k)`,
    /// `1/(2√n)`).
    fn penalty(&self, parts: usize) -> N;

    /// Admissibility: minimum allowed first coordinate for a family with
    /// `parts` parts (`parts` itself for `T`, `0` when unconstrained).
    fn min_first_coordinate(&self, parts: usize) -> u64;

    /// Upper bound on useful part counts for a family whose first
    /// coordinate is `coord`.
    fn parts_cap(&self, coord: u64) -> usize {
        let _ = coord;
        usize::MAX
    }
}

pub(crate) struct TsirelsonRule;

impl<N: DpNum> PartitionRule<N> for TsirelsonRule
where
    TsirelsonRule: HalfOf<N>,
{
    fn penalty(&self, _parts: usize) -> N {
        self.half()
    }
    fn min_first_coordinate(&self, parts: usize) -> u64 {
        parts as u64
    }
    fn parts_cap(&self, coord: u64) -> usize {
        usize::try_from(coord).unwrap_or(usize::MAX)
    }
}

/// Produces the exact factor 1/2 in the rule's scalar type.
pub(crate) trait HalfOf<N> {
    fn half(&self) -> N;
}

impl HalfOf<f64> for TsirelsonRule {
    fn half(&self) -> f64 {
        0.5
    }
}

impl HalfOf<BigRational> for TsirelsonRule {
    fn half(&self) -> BigRational {
        BigRational::new(1.into(), 2.into())
    }
}

pub(crate) struct SchlumprechtRule;

impl SchlumprechtRule {
    pub(crate) fn f(k: usize) -> f64 {
        ((k + 1) as f64).log2()
    }
}

impl PartitionRule<f64> for SchlumprechtRule {
    fn penalty(&self, parts: usize) -> f64 {
        1.0 / Self::f(parts)
    }
    fn min_first_coordinate(&self, _parts: usize) -> u64 {
        0
    }
}

pub(crate) struct TzafririRule;

impl PartitionRule<f64> for TzafririRule {
    fn penalty(&self, parts: usize) -> f64 {
        1.0 / (2.0 * (parts as f64).sqrt())
    }
    fn min_first_coordinate(&self, _parts: usize) -> u64 {
        0
    }
}

/// How the norm of a support slice was attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Choice {
    /// `‖·‖_∞` at the first point of the slice.
    Leaf,
    /// Best family skips the first point; defer to slice `i+1..=j`.
    Suffix,
    /// A partition into `parts` successive intervals starting at `i` and
    /// covering through `j`.
    Split { parts: usize },
}

pub(crate) struct DpTables<N> {
    pub coords: Vec<u64>,
    /// `norms[i][j]`: norm of the restriction to support points `i..=j`.
    pub norms: Vec<Vec<N>>,
    pub choices: Vec<Vec<Choice>>,
    /// When requested: `cover_last[t][m-1]` is the best sum of `m`
    /// successive parts covering support points `t..` to the end
    /// (used by the `T` k-functionals).
    pub cover_last: Vec<Vec<N>>,
}

impl<N: DpNum> DpTables<N> {
    pub(crate) fn value(&self) -> N {
        let n = self.coords.len();
        if n == 0 {
            N::zero()
        } else {
            self.norms[0][n - 1].clone()
        }
    }
}

/// Runs the DP.  `coords` are the strictly increasing original coordinate
/// indices of the support; `coefs` the matching absolute coefficients.
/// `collect_cover` asks for the `cover_last` table up to that many parts.
pub(crate) fn solve<N: DpNum, R: PartitionRule<N>>(
    coords: Vec<u64>,
    coefs: Vec<N>,
    rule: &R,
    collect_cover: usize,
) -> DpTables<N> {
    let n = coords.len();
    debug_assert_eq!(n, coefs.len());
    let mut norms: Vec<Vec<N>> = vec![vec![N::zero(); n]; n];
    let mut choices: Vec<Vec<Choice>> = vec![vec![Choice::Leaf; n]; n];
    let mut cover_last: Vec<Vec<N>> = vec![Vec::new(); n];

    for i in (0..n).rev() {
        let cap_i = rule.parts_cap(coords[i]).min(n - i).max(1);
        // b[j - i][m - 1]: best sum of m successive parts covering i..=j.
        let mut b: Vec<Vec<N>> = Vec::with_capacity(n - i);
        for j in i..n {
            let len = j - i + 1;
            let mcap = len.min(cap_i);
            let mut bj: Vec<N> = Vec::with_capacity(mcap);
            bj.push(N::zero()); // m = 1 placeholder, set to norms[i][j] below
            for m in 2..=mcap {
                // parts 1..m-1 cover i..=mid, part m covers mid+1..=j
                let mut best: Option<N> = None;
                for mid in (i + m - 2)..j {
                    let cand = b[mid - i][m - 2].add_ref(&norms[mid + 1][j]);
                    if best.as_ref().map_or(true, |b| cand > *b) {
                        best = Some(cand);
                    }
                }
                bj.push(best.expect("nonempty split range"));
            }

            let mut best_val = coefs[i].clone();
            let mut choice = Choice::Leaf;
            if i < j && norms[i + 1][j] > best_val {
                best_val = norms[i + 1][j].clone();
                choice = Choice::Suffix;
            }
            for m in 2..=mcap {
                if rule.min_first_coordinate(m) <= coords[i] {
                    let v = rule.penalty(m).mul_ref(&bj[m - 1]);
                    if v > best_val {
                        best_val = v;
                        choice = Choice::Split { parts: m };
                    }
                }
            }
            bj[0] = best_val.clone();
            norms[i][j] = best_val;
            choices[i][j] = choice;
            b.push(bj);
        }
        if collect_cover > 0 {
            let last = &b[n - 1 - i];
            let take = collect_cover.min(last.len());
            cover_last[i] = last[..take].to_vec();
        }
    }

    DpTables {
        coords,
        norms,
        choices,
        cover_last,
    }
}

/// Recomputes the split-count table for left endpoint `i` up to `j` and
/// backtracks the `parts - 1` interior split points of the best
/// `parts`-partition of `i..=j`.  Returned mids are support positions:
/// parts are `i..=mids[0]`, `mids[0]+1..=mids[1]`, …, `mids.last()+1..=j`.
pub(crate) fn split_points<N: DpNum>(
    tables: &DpTables<N>,
    i: usize,
    j: usize,
    parts: usize,
) -> Vec<usize> {
    debug_assert!(parts >= 2 && i + parts <= j + 1);
    let norms = &tables.norms;
    let len = j - i + 1;
    // b[d][m - 1] for d = j' - i, with argmid alongside
    let mut b: Vec<Vec<N>> = Vec::with_capacity(len);
    let mut arg: Vec<Vec<usize>> = Vec::with_capacity(len);
    for jj in i..=j {
        let mcap = (jj - i + 1).min(parts);
        let mut bj: Vec<N> = Vec::with_capacity(mcap);
        let mut aj: Vec<usize> = Vec::with_capacity(mcap);
        bj.push(norms[i][jj].clone());
        aj.push(usize::MAX);
        for m in 2..=mcap {
            let mut best: Option<(N, usize)> = None;
            for mid in (i + m - 2)..jj {
                let cand = b[mid - i][m - 2].add_ref(&norms[mid + 1][jj]);
                if best.as_ref().map_or(true, |(v, _)| cand > *v) {
                    best = Some((cand, mid));
                }
            }
            let (v, mid) = best.expect("nonempty split range");
            bj.push(v);
            aj.push(mid);
        }
        b.push(bj);
        arg.push(aj);
    }
    let mut mids = Vec::with_capacity(parts - 1);
    let mut jj = j;
    let mut m = parts;
    while m >= 2 {
        let mid = arg[jj - i][m - 1];
        mids.push(mid);
        jj = mid;
        m -= 1;
    }
    mids.reverse();
    mids
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsirelson_singleton_is_sup() {
        let t = solve(vec![1], vec![1.0f64], &TsirelsonRule, 0);
        assert_eq!(t.value(), 1.0);
    }

    #[test]
    fn tsirelson_four_far_units() {
        // support {4,5,6,7}: a 4-way admissible split doubles the sup
        let t = solve(
            vec![4, 5, 6, 7],
            vec![1.0f64, 1.0, 1.0, 1.0],
            &TsirelsonRule,
            0,
        );
        assert_eq!(t.value(), 2.0);
        assert_eq!(t.choices[0][3], Choice::Split { parts: 4 });
    }

    #[test]
    fn admissibility_blocks_early_splits() {
        // support {1, 2}: any family needs n >= 2 <= E_1, so E_1 can hold
        // at most coordinate 2 alone and the sup branch wins
        let t = solve(vec![1, 2], vec![1.0f64, 1.0], &TsirelsonRule, 0);
        assert_eq!(t.value(), 1.0);
    }

    #[test]
    fn schlumprecht_pair() {
        let t = solve(vec![1, 2], vec![1.0f64, 1.0], &SchlumprechtRule, 0);
        let expect = 2.0 / 3f64.log2();
        assert!((t.value() - expect).abs() < 1e-12);
    }

    #[test]
    fn split_points_recover_partition() {
        let t = solve(
            vec![4, 5, 6, 7],
            vec![1.0f64, 1.0, 1.0, 1.0],
            &TsirelsonRule,
            0,
        );
        let mids = split_points(&t, 0, 3, 4);
        assert_eq!(mids, vec![0, 1, 2]);
    }
}
