//! The grid spaces `X_k`.
//!
//! A vector lives on the upper-triangular grid `{(i, j) : i <= k, j >= i}`.
//! For a weight vector `a` in the positive part of the `ℓ_q` unit sphere,
//! the inner value `|x|_(a)` is a sup over chains of permissible
//! collections: strictly increasing columns `n_1^1 < … < n_1^k < n_2^1 < …`
//! assign one column per row per group, and group `j` contributes
//! `(Σ_i a_i |b^i_{n_j^i}|)^p` to an `ℓ_p` sum.  Columns off the support
//! carry zero, so only the support cells matter — but skipped rows still
//! consume integer columns, which limits how tightly packed a chain can
//! be.  The full norm is the sup of the inner value over the `ℓ_q`
//! sphere, computed here by alternating ascent with multi-start.

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vector::GridVector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum XkError {
    #[error("exponents must satisfy 1 < q < p < r with 1/q + 1/r = 1, got p={p}, q={q}, r={r}")]
    BadExponents { p: f64, q: f64, r: f64 },
    #[error("k must be >= 1, got {0}")]
    BadK(usize),
    #[error("vector has k = {vector} but config has k = {config}")]
    KMismatch { vector: usize, config: usize },
    #[error("weight vector has {got} entries, expected {expected}")]
    WrongWeightCount { expected: usize, got: usize },
    #[error("weights must be nonnegative and finite, got {0}")]
    BadWeight(f64),
    #[error("grid search supports k <= 3, got {0}")]
    GridSearchK(usize),
    #[error("alternating ascent did not stabilize; best value seen {best}")]
    NonConvergence { best: f64 },
}

/// Parameters of an `X_k` space plus optimizer settings for [`xk_norm`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XkConfig {
    pub k: usize,
    pub p: f64,
    pub q: f64,
    pub r: f64,
    /// Random starting points on the `ℓ_q` sphere, in addition to the `k`
    /// coordinate vectors.
    pub multi_start: usize,
    /// Stop the alternating ascent once an outer round improves by less
    /// than this.
    pub tol: f64,
    pub max_iters: usize,
    /// Resolution of [`xk_norm_grid_search`].
    pub grid_step: f64,
    pub seed: u64,
}

impl XkConfig {
    pub fn new(k: usize, p: f64, q: f64, r: f64) -> Result<Self, XkError> {
        if k == 0 {
            return Err(XkError::BadK(k));
        }
        let conjugate = (1.0 / q + 1.0 / r - 1.0).abs() <= 1e-12;
        if !(1.0 < q && q < p && p < r) || !conjugate {
            return Err(XkError::BadExponents { p, q, r });
        }
        Ok(XkConfig {
            k,
            p,
            q,
            r,
            multi_start: 16,
            tol: 1e-7,
            max_iters: 200,
            grid_step: 0.02,
            seed: 0,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// An `X_k` norm value with the attaining weights and chain grouping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XkNorm {
    pub value: f64,
    /// The `ℓ_q`-sphere weights `a` the ascent settled on.
    pub weights: Vec<f64>,
    /// The chain: each group lists its `(row, column)` support cells.
    pub groups: Vec<Vec<(usize, u64)>>,
    pub converged: bool,
}

impl XkNorm {
    /// Recomputes `(Σ_g (Σ_{(i,j) in g} a_i |x_{i,j}|)^p)^{1/p}` from the
    /// stored weights and grouping; matches `value` up to the ascent
    /// tolerance.
    pub fn replay(&self, x: &GridVector, cfg: &XkConfig) -> f64 {
        let mut total = 0.0;
        for group in &self.groups {
            let s: f64 = group
                .iter()
                .map(|&(row, col)| self.weights[row - 1] * cell_abs(x, row, col))
                .sum();
            total += s.powf(cfg.p);
        }
        total.powf(1.0 / cfg.p)
    }
}

fn cell_abs(x: &GridVector, row: usize, col: u64) -> f64 {
    x.iter()
        .find(|&(r, c, _)| r == row && c == col)
        .map(|(_, _, v)| v.abs())
        .unwrap_or(0.0)
}

/// Chain solver: cells sorted by column; a chain is a subsequence with
/// strictly increasing columns, split into groups.  Consecutive cells
/// `(i1, c1) -> (i2, c2)` need enough spare columns for the skipped rows:
/// inside a group `i2 > i1` and `c2 - c1 >= i2 - i1`; across a group
/// boundary `c2 - c1 >= (k - i1) + i2`.  The chain can always start or
/// end anywhere (columns below the first support cell and beyond the last
/// are unconstrained).
struct ChainSolver<'a> {
    cells: &'a [(usize, u64, f64)],
    weights: Vec<f64>,
    k: usize,
    p: f64,
    /// best continuation value (sum of `S^p`) after a group closing at
    /// cell index `t`, with its groups
    after: Vec<Option<(f64, Vec<Vec<usize>>)>>,
}

impl ChainSolver<'_> {
    fn best_after(&mut self, t: usize) -> (f64, Vec<Vec<usize>>) {
        if let Some(memo) = &self.after[t] {
            return memo.clone();
        }
        let (i1, c1, _) = self.cells[t];
        let mut best = (0.0, Vec::new());
        for u in (t + 1)..self.cells.len() {
            let (i2, c2, _) = self.cells[u];
            if c2 >= c1 + (self.k - i1 + i2) as u64 {
                let cand = self.open_group(u, self.weights[u], vec![u]);
                if cand.0 > best.0 {
                    best = cand;
                }
            }
        }
        self.after[t] = Some(best.clone());
        best
    }

    /// A group is open with accumulated sum `sum` and last cell `last`;
    /// either close it or pull in another cell.
    fn open_group(&mut self, last: usize, sum: f64, members: Vec<usize>) -> (f64, Vec<Vec<usize>>) {
        let (tail_v, tail_g) = self.best_after(last);
        let mut best_v = sum.powf(self.p) + tail_v;
        let mut best_g = {
            let mut g = Vec::with_capacity(1 + tail_g.len());
            g.push(members.clone());
            g.extend(tail_g);
            g
        };
        let (i1, c1, _) = self.cells[last];
        for u in (last + 1)..self.cells.len() {
            let (i2, c2, _) = self.cells[u];
            if i2 > i1 && c2 - c1 >= (i2 - i1) as u64 {
                let mut extended = members.clone();
                extended.push(u);
                let cand = self.open_group(u, sum + self.weights[u], extended);
                if cand.0 > best_v {
                    best_v = cand.0;
                    best_g = cand.1;
                }
            }
        }
        (best_v, best_g)
    }

    fn solve(&mut self) -> (f64, Vec<Vec<usize>>) {
        let mut best = (0.0, Vec::new());
        for s in 0..self.cells.len() {
            let cand = self.open_group(s, self.weights[s], vec![s]);
            if cand.0 > best.0 {
                best = cand;
            }
        }
        best
    }
}

fn check_weights(a: &[f64], k: usize) -> Result<(), XkError> {
    if a.len() != k {
        return Err(XkError::WrongWeightCount {
            expected: k,
            got: a.len(),
        });
    }
    if let Some(&bad) = a.iter().find(|&&w| !w.is_finite() || w < 0.0) {
        return Err(XkError::BadWeight(bad));
    }
    Ok(())
}

fn inner_solve(
    x: &GridVector,
    cfg: &XkConfig,
    a: &[f64],
) -> (f64, Vec<Vec<(usize, u64)>>) {
    let cells = x.cells_by_column();
    let weights: Vec<f64> = cells
        .iter()
        .map(|&(row, _, b)| a[row - 1] * b.abs())
        .collect();
    let mut solver = ChainSolver {
        cells: &cells,
        weights,
        k: cfg.k,
        p: cfg.p,
        after: vec![None; cells.len()],
    };
    let (total, groups) = solver.solve();
    let groups = groups
        .into_iter()
        .map(|g| g.into_iter().map(|t| (cells[t].0, cells[t].1)).collect())
        .collect();
    (total.powf(1.0 / cfg.p), groups)
}

/// The inner value `|x|_(a)` for fixed nonnegative weights `a`
/// (exact: the chain DP enumerates every feasible grouping).
pub fn xk_inner_value(x: &GridVector, cfg: &XkConfig, a: &[f64]) -> Result<f64, XkError> {
    if x.k() != cfg.k {
        return Err(XkError::KMismatch {
            vector: x.k(),
            config: cfg.k,
        });
    }
    check_weights(a, cfg.k)?;
    Ok(inner_solve(x, cfg, a).0)
}

fn lq_normalize(a: &mut [f64], q: f64) -> bool {
    let norm: f64 = a.iter().map(|w| w.powf(q)).sum::<f64>().powf(1.0 / q);
    if norm <= 0.0 || !norm.is_finite() {
        return false;
    }
    for w in a.iter_mut() {
        *w /= norm;
    }
    true
}

/// For a fixed grouping, the value as a function of `a` is `‖M a‖_p` with
/// `M[g][i] = Σ_{(i, j) in g} |x_{i,j}|`; maximize it over the positive
/// `ℓ_q` sphere by the normalized fixed-point iteration
/// `a ∝ (Mᵀ (M a)^{p-1})^{1/(q-1)}`.
fn reweight(m: &[Vec<f64>], a: &mut Vec<f64>, p: f64, q: f64) {
    for _ in 0..100 {
        let u: Vec<f64> = m
            .iter()
            .map(|row| row.iter().zip(a.iter()).map(|(c, w)| c * w).sum::<f64>())
            .collect();
        let up: f64 = u.iter().map(|v| v.powf(p)).sum::<f64>().powf(1.0 / p);
        if up <= 0.0 {
            return;
        }
        let v: Vec<f64> = u.iter().map(|t| (t / up).powf(p - 1.0)).collect();
        let mut next: Vec<f64> = (0..a.len())
            .map(|i| {
                m.iter()
                    .zip(v.iter())
                    .map(|(row, vg)| row[i] * vg)
                    .sum::<f64>()
                    .powf(1.0 / (q - 1.0))
            })
            .collect();
        if !lq_normalize(&mut next, q) {
            return;
        }
        let delta: f64 = next
            .iter()
            .zip(a.iter())
            .map(|(n, o)| (n - o).abs())
            .fold(0.0, f64::max);
        *a = next;
        if delta < 1e-12 {
            return;
        }
    }
}

fn group_matrix(x: &GridVector, k: usize, groups: &[Vec<(usize, u64)>]) -> Vec<Vec<f64>> {
    groups
        .iter()
        .map(|group| {
            let mut row = vec![0.0; k];
            for &(r, c) in group {
                row[r - 1] += cell_abs(x, r, c);
            }
            row
        })
        .collect()
}

/// `‖x‖ = sup { |x|_(a) : ‖a‖_q <= 1, a >= 0 }` by alternating ascent
/// from `multi_start` random sphere points plus the coordinate vectors.
pub fn xk_norm(x: &GridVector, cfg: &XkConfig) -> Result<XkNorm, XkError> {
    if x.k() != cfg.k {
        return Err(XkError::KMismatch {
            vector: x.k(),
            config: cfg.k,
        });
    }
    if x.is_zero() {
        let mut a = vec![0.0; cfg.k];
        a[0] = 1.0;
        return Ok(XkNorm {
            value: 0.0,
            weights: a,
            groups: Vec::new(),
            converged: true,
        });
    }

    let mut starts: Vec<Vec<f64>> = (0..cfg.k)
        .map(|i| {
            let mut a = vec![0.0; cfg.k];
            a[i] = 1.0;
            a
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let unif = Uniform::new(0.01f64, 1.0);
    for _ in 0..cfg.multi_start {
        let mut a: Vec<f64> = (0..cfg.k).map(|_| unif.sample(&mut rng)).collect();
        if lq_normalize(&mut a, cfg.q) {
            starts.push(a);
        }
    }

    let mut best: Option<XkNorm> = None;
    for mut a in starts {
        let (mut value, mut groups) = inner_solve(x, cfg, &a);
        let mut converged = false;
        for _ in 0..cfg.max_iters {
            let m = group_matrix(x, cfg.k, &groups);
            reweight(&m, &mut a, cfg.p, cfg.q);
            let (next_value, next_groups) = inner_solve(x, cfg, &a);
            let gain = next_value - value;
            groups = next_groups;
            if next_value > value {
                value = next_value;
            }
            if gain.abs() < cfg.tol {
                converged = true;
                break;
            }
        }
        if best.as_ref().map_or(true, |b| value > b.value) {
            best = Some(XkNorm {
                value,
                weights: a,
                groups,
                converged,
            });
        }
    }
    Ok(best.expect("at least the coordinate starts"))
}

/// Brute-force cross-check of [`xk_norm`] for `k <= 3`: sweep the
/// positive `ℓ_q` sphere at resolution `cfg.grid_step` and take the best
/// inner value.
pub fn xk_norm_grid_search(x: &GridVector, cfg: &XkConfig) -> Result<f64, XkError> {
    if x.k() != cfg.k {
        return Err(XkError::KMismatch {
            vector: x.k(),
            config: cfg.k,
        });
    }
    if cfg.k > 3 {
        return Err(XkError::GridSearchK(cfg.k));
    }
    let step = cfg.grid_step;
    let q = cfg.q;
    let mut best = 0.0f64;
    let mut eval = |a: &[f64]| {
        let (v, _) = inner_solve(x, cfg, a);
        if v > best {
            best = v;
        }
    };
    match cfg.k {
        1 => eval(&[1.0]),
        2 => {
            let mut t = 0.0f64;
            while t <= 1.0 + 1e-12 {
                let t1 = t.min(1.0);
                eval(&[t1, (1.0 - t1.powf(q)).max(0.0).powf(1.0 / q)]);
                t += step;
            }
        }
        _ => {
            let mut t1 = 0.0f64;
            while t1 <= 1.0 + 1e-12 {
                let a1 = t1.min(1.0);
                let mut t2 = 0.0f64;
                loop {
                    let rem = 1.0 - a1.powf(q) - t2.powf(q);
                    if rem < -1e-12 {
                        break;
                    }
                    eval(&[a1, t2, rem.max(0.0).powf(1.0 / q)]);
                    t2 += step;
                }
                t1 += step;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3() -> XkConfig {
        // q = 4/3 and r = 4 are conjugate; p sits strictly between
        XkConfig::new(3, 2.0, 4.0 / 3.0, 4.0).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(XkConfig::new(0, 2.0, 4.0 / 3.0, 4.0).is_err());
        assert!(XkConfig::new(2, 2.0, 1.5, 4.0).is_err()); // not conjugate
        assert!(XkConfig::new(2, 5.0, 4.0 / 3.0, 4.0).is_err()); // p > r
    }

    #[test]
    fn inner_single_cell() {
        let cfg = XkConfig::new(2, 2.0, 4.0 / 3.0, 4.0).unwrap();
        let x = GridVector::new(2, [(1, 1, 1.0)]).unwrap();
        let v = xk_inner_value(&x, &cfg, &[1.0, 0.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inner_permissible_pair_groups_both_ways() {
        let cfg = XkConfig::new(2, 2.0, 4.0 / 3.0, 4.0).unwrap();
        // e^1_1 + e^2_2: one group (sum a1 + a2) vs two groups
        let x = GridVector::new(2, [(1, 1, 1.0), (2, 2, 1.0)]).unwrap();
        let a = [0.6, 0.7];
        let v = xk_inner_value(&x, &cfg, &a).unwrap();
        let together = a[0] + a[1];
        let separate = (a[0].powi(2) + a[1].powi(2)).sqrt();
        assert!((v - together.max(separate)).abs() < 1e-12);
    }

    #[test]
    fn inner_rejects_bad_weights() {
        let cfg = cfg3();
        let x = GridVector::new(3, [(1, 1, 1.0)]).unwrap();
        assert!(matches!(
            xk_inner_value(&x, &cfg, &[1.0, 0.0]),
            Err(XkError::WrongWeightCount { .. })
        ));
        assert!(matches!(
            xk_inner_value(&x, &cfg, &[1.0, -0.5, 0.0]),
            Err(XkError::BadWeight(_))
        ));
    }

    #[test]
    fn permissible_triple_norm() {
        let cfg = cfg3();
        let x = GridVector::new(3, [(1, 1, 1.0), (2, 2, 1.0), (3, 3, 1.0)]).unwrap();
        let n = xk_norm(&x, &cfg).unwrap();
        let expect = 3f64.powf(1.0 / cfg.r);
        assert!((n.value - expect).abs() < 1e-6, "got {}", n.value);
        assert!((n.replay(&x, &cfg) - n.value).abs() < 1e-6);
    }

    #[test]
    fn anti_diagonal_triple_norm_is_one() {
        let cfg = cfg3();
        // e^1_{30} + e^2_{20} + e^3_{10}: wide spacing, rows reversed
        let x = GridVector::new(3, [(1, 30, 1.0), (2, 20, 1.0), (3, 10, 1.0)]).unwrap();
        let n = xk_norm(&x, &cfg).unwrap();
        assert!((n.value - 1.0).abs() < 1e-6, "got {}", n.value);
    }

    #[test]
    fn grid_search_agrees_on_triple() {
        let cfg = cfg3();
        let x = GridVector::new(3, [(1, 1, 1.0), (2, 2, 1.0), (3, 3, 1.0)]).unwrap();
        let ascent = xk_norm(&x, &cfg).unwrap().value;
        let grid = xk_norm_grid_search(&x, &cfg).unwrap();
        assert!((ascent - grid).abs() < 5e-3);
        assert!(ascent >= grid - 1e-9); // the ascent should not lose to the coarse grid
    }

    #[test]
    fn tight_packing_blocks_chains() {
        let cfg = XkConfig::new(2, 2.0, 4.0 / 3.0, 4.0).unwrap();
        // e^1_2 then e^1_3: reusing row 1 forces a new group, which needs
        // a row-2 column in between, but the gap has no spare column
        let x = GridVector::new(2, [(1, 2, 1.0), (1, 3, 1.0)]).unwrap();
        let v = xk_inner_value(&x, &cfg, &[1.0, 1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
        // with a wider gap the two cells fit in successive groups
        let y = GridVector::new(2, [(1, 2, 1.0), (1, 5, 1.0)]).unwrap();
        let w = xk_inner_value(&y, &cfg, &[1.0, 1.0]).unwrap();
        assert!((w - 2f64.sqrt()).abs() < 1e-12, "got {w}");
    }
}
