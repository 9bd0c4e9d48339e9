//! Generators for the explicit vector families used by the experiments.
//!
//! Everything here is deterministic: identical parameters always yield
//! identical coordinate layouts, so experiment reports are reproducible
//! bit for bit.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::dp::SchlumprechtRule;
use crate::scalar::{Scalar, ScalarMode};
use crate::vector::{GridVector, SparseVector, VectorError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("parameter n must be >= 2, got {0}")]
    SmallN(u64),
    #[error("branching factors must be >= 4, got {0}")]
    SmallBranching(u64),
    #[error("layout needs d >= 1, n >= 1 and one block length per column")]
    BadLayout,
    #[error("block lengths must be strictly increasing")]
    NotIncreasing,
    #[error("expected {expected} columns/coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("columns must be strictly {expected} across rows")]
    BadColumnOrder { expected: &'static str },
    #[error(transparent)]
    Vector(#[from] VectorError),
}

/// The `ℓ₁ⁿ`-average `z_n = (2/n²) Σ_{i=1}^{n²} e_{n³+i}`: `n²` far-out
/// coordinates of height `2/n²`, normalized in `T`.
pub fn z_average(n: u64) -> Result<SparseVector, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::SmallN(n));
    }
    let coeff = Scalar::ratio(2, (n * n) as i64).expect("n >= 2");
    let base = n * n * n;
    Ok(SparseVector::from_entries(
        ScalarMode::Exact,
        (1..=n * n).map(|i| (base + i, coeff.clone())),
    )?)
}

/// `x_n = e_{n³} + (1/4) e_{n³+1}` for odd `n`, `e_{n³} + (1/4) z_n` for
/// even `n`.  Both are `T`-normalized: the spike at `n³` dominates.
pub fn thm43_x(n: u64) -> Result<SparseVector, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::SmallN(n));
    }
    let base = n * n * n;
    let quarter = Scalar::ratio(1, 4).expect("1/4");
    let spike = SparseVector::from_entries(ScalarMode::Exact, [(base, Scalar::int(1))])?;
    let tail = if n % 2 == 1 {
        SparseVector::from_entries(ScalarMode::Exact, [(base + 1, quarter)])?
    } else {
        z_average(n)?.scale(&quarter)?
    };
    Ok(spike.try_add(&tail)?)
}

/// `y_m = (1/2) Σ_{i=1}^4 e_{m+i}`.
pub fn thm43_y(m: u64) -> Result<SparseVector, ConstructionError> {
    let half = Scalar::ratio(1, 2).expect("1/2");
    Ok(SparseVector::from_entries(
        ScalarMode::Exact,
        (1..=4).map(|i| (m + i, half.clone())),
    )?)
}

/// Disjointly supported vectors `x_1, …, x_m` built over a tuple tree
/// with branching factors `q_1, …, q_m`: level `i` has `p_i = q_1 ⋯ q_i`
/// tuples, and `x_i` puts coefficient `2/√p_i` on the rank of each
/// level-`i` tuple.  Ranks are assigned in shorter-prefix-first
/// lexicographic order — a preorder walk of the tree — which interleaves
/// the supports: every internal node is immediately followed by its
/// descendants.
#[derive(Debug, Clone)]
pub struct CorrespondingFamily {
    q: Vec<u64>,
    p: Vec<u64>,
    vectors: Vec<SparseVector>,
    ranks: BTreeMap<Vec<u64>, u64>,
}

impl CorrespondingFamily {
    pub fn new(q: &[u64]) -> Result<Self, ConstructionError> {
        Self::with_base(q, 1)
    }

    /// Same family with ranks starting at `base` instead of 1.
    pub fn with_base(q: &[u64], base: u64) -> Result<Self, ConstructionError> {
        if let Some(&bad) = q.iter().find(|&&b| b < 4) {
            return Err(ConstructionError::SmallBranching(bad));
        }
        let m = q.len();
        let mut p = Vec::with_capacity(m);
        let mut acc = 1u64;
        for &b in q {
            acc *= b;
            p.push(acc);
        }
        let mut ranks = BTreeMap::new();
        let mut next = base;
        let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
        // preorder walk; children pushed in reverse so low branches pop first
        while let Some(tuple) = stack.pop() {
            if !tuple.is_empty() {
                ranks.insert(tuple.clone(), next);
                next += 1;
            }
            if tuple.len() < m {
                for j in (1..=q[tuple.len()]).rev() {
                    let mut child = tuple.clone();
                    child.push(j);
                    stack.push(child);
                }
            }
        }
        let mut vectors = Vec::with_capacity(m);
        for i in 1..=m {
            let coeff = 2.0 / (p[i - 1] as f64).sqrt();
            let entries = ranks
                .iter()
                .filter(|(t, _)| t.len() == i)
                .map(|(_, &r)| (r, Scalar::Float(coeff)));
            vectors.push(SparseVector::from_entries(ScalarMode::Float, entries)?);
        }
        Ok(CorrespondingFamily {
            q: q.to_vec(),
            p,
            vectors,
            ranks,
        })
    }

    pub fn branching(&self) -> &[u64] {
        &self.q
    }

    /// `p_i = q_1 ⋯ q_i`.
    pub fn level_sizes(&self) -> &[u64] {
        &self.p
    }

    /// `x_1, …, x_m` in level order.
    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }

    /// The coordinate index assigned to a tuple, if it is in the tree.
    pub fn rank_of(&self, tuple: &[u64]) -> Option<u64> {
        self.ranks.get(tuple).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockOrder {
    /// Blocks laid out in `(i, j)` lexicographic order: all of repeat 1,
    /// then repeat 2, … — same-length blocks end up far apart.
    Forward,
    /// `(j, i)` order: the `d` copies of each length are adjacent, so the
    /// group sums are successive.
    Reversed,
}

/// A layout of `d·n` successive blocks, block `(i, j)` being a copy of
/// `v_j = (f(q_j)/q_j) Σ e`: `q_j` coordinates of height `f(q_j)/q_j`,
/// `f(k) = log₂(k+1)`.
#[derive(Debug, Clone)]
pub struct SchlumprechtLayout {
    pub n: usize,
    pub d: usize,
    pub q: Vec<u64>,
    pub order: BlockOrder,
    /// Empty coordinates between consecutive blocks.
    pub gap: u64,
}

impl SchlumprechtLayout {
    pub fn new(n: usize, d: usize, q: Vec<u64>, order: BlockOrder) -> Result<Self, ConstructionError> {
        if n == 0 || d == 0 || q.len() != n {
            return Err(ConstructionError::BadLayout);
        }
        if !q.windows(2).all(|w| w[0] < w[1]) {
            return Err(ConstructionError::NotIncreasing);
        }
        Ok(SchlumprechtLayout {
            n,
            d,
            q,
            order,
            gap: 0,
        })
    }
}

/// The laid-out blocks with their `(repeat, column)` labels.
#[derive(Debug, Clone)]
pub struct SchlumprechtFamily {
    pub layout: SchlumprechtLayout,
    /// `(i, j, block)` in left-to-right coordinate order.
    pub blocks: Vec<(usize, usize, SparseVector)>,
}

pub fn schlumprecht_family(
    layout: SchlumprechtLayout,
) -> Result<SchlumprechtFamily, ConstructionError> {
    let mut labels: Vec<(usize, usize)> = Vec::with_capacity(layout.d * layout.n);
    match layout.order {
        BlockOrder::Forward => {
            for i in 1..=layout.d {
                for j in 1..=layout.n {
                    labels.push((i, j));
                }
            }
        }
        BlockOrder::Reversed => {
            for j in 1..=layout.n {
                for i in 1..=layout.d {
                    labels.push((i, j));
                }
            }
        }
    }
    let mut blocks = Vec::with_capacity(labels.len());
    let mut next = 1u64;
    for (i, j) in labels {
        let len = layout.q[j - 1];
        let coeff = SchlumprechtRule::f(len as usize) / len as f64;
        let block = SparseVector::from_entries(
            ScalarMode::Float,
            (0..len).map(|t| (next + t, Scalar::Float(coeff))),
        )?;
        next += len + layout.gap;
        blocks.push((i, j, block));
    }
    Ok(SchlumprechtFamily {
        layout,
        blocks,
    })
}

impl SchlumprechtFamily {
    /// The group sum `Σ_{i=1}^d` of the blocks in column `j` (1-based):
    /// `u_j` in forward order, the successive `w_j` in reversed order.
    pub fn group(&self, j: usize) -> SparseVector {
        let mut sum = SparseVector::zero(ScalarMode::Float);
        for (_, jj, block) in &self.blocks {
            if *jj == j {
                sum = sum.try_add(block).expect("disjoint float blocks");
            }
        }
        sum
    }

    pub fn groups(&self) -> Vec<SparseVector> {
        (1..=self.layout.n).map(|j| self.group(j)).collect()
    }
}

fn xk_assignment(
    k: usize,
    columns: &[u64],
    coefficients: &[f64],
) -> Result<Vec<(usize, u64, f64)>, ConstructionError> {
    if columns.len() != k {
        return Err(ConstructionError::WrongLength {
            expected: k,
            got: columns.len(),
        });
    }
    if coefficients.len() != k {
        return Err(ConstructionError::WrongLength {
            expected: k,
            got: coefficients.len(),
        });
    }
    Ok((1..=k)
        .map(|row| (row, columns[row - 1], coefficients[row - 1]))
        .collect())
}

/// The permissible collection `Σ b_i e^i_{n_i}` with `n_1 < ⋯ < n_k`: one
/// cell per row, columns increasing with the row.
pub fn xk_permissible(
    k: usize,
    columns: &[u64],
    coefficients: &[f64],
) -> Result<GridVector, ConstructionError> {
    if !columns.windows(2).all(|w| w[0] < w[1]) {
        return Err(ConstructionError::BadColumnOrder {
            expected: "increasing",
        });
    }
    Ok(GridVector::new(k, xk_assignment(k, columns, coefficients)?)?)
}

/// The reversed collection `Σ b_i e^i_{n_{k+1-i}}`: columns decreasing
/// with the row, so no permissible collection meets two of its cells.
pub fn xk_anti_diagonal(
    k: usize,
    columns: &[u64],
    coefficients: &[f64],
) -> Result<GridVector, ConstructionError> {
    if !columns.windows(2).all(|w| w[0] > w[1]) {
        return Err(ConstructionError::BadColumnOrder {
            expected: "decreasing",
        });
    }
    Ok(GridVector::new(k, xk_assignment(k, columns, coefficients)?)?)
}
