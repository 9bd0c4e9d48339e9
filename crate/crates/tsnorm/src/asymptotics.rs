//! Iterated limits, spreading models and asymmetry measurements.
//!
//! The central quantity is the staircase value
//! `‖Σ_i b_i x^i_{n_i}‖` evaluated at spread-out index tuples
//! `n_1 < n_2 < …`, with a permutation deciding which row's index grows
//! innermost.  For the constructions in this crate the iterated limits
//! stabilize exactly once the tuple is spread enough, so a short ladder
//! of increasingly spread tuples either converges or visibly fails to.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{
    schlumprecht_family, thm43_x, thm43_y, z_average, BlockOrder, ConstructionError,
    SchlumprechtLayout,
};
use crate::dp::SchlumprechtRule;
use crate::scalar::{Scalar, ScalarMode};
use crate::spaces::{xk_norm, EngineError, SeqSpace, XkConfig, XkError};
use crate::vector::SparseVector;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticsError {
    #[error("iterated-limit estimation needs schedule depth >= 3, got {0}")]
    ShallowSchedule(usize),
    #[error("rung {0} is outside the schedule")]
    RungOutOfRange(usize),
    #[error("order must be a permutation of 0..{rows}")]
    BadPermutation { rows: usize },
    #[error("rows {a} and {b} overlap at rung {rung}; spread the schedule further")]
    SupportOverlap { a: usize, b: usize, rung: usize },
    #[error("explicit schedule tuple has {got} indices for {rows} rows")]
    TupleLength { rows: usize, got: usize },
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Xk(#[from] XkError),
}

/// A one-parameter family of vectors `n ↦ x_n`, the rows of a staircase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeqFamily {
    /// `x_n = e_n`.
    Basis,
    /// `x_n = z_n`, the normalized `ℓ₁ⁿ`-average.
    ZAverage,
    /// `x_{2n+1} = e_{(2n+1)³} + ¼ e_{(2n+1)³+1}` (parameterized by `n`).
    Thm43XOdd,
    /// `x_{2n+2} = e_{(2n+2)³} + ¼ z_{2n+2}`.
    Thm43XEven,
    /// `y_m = ½ (e_{m+1} + ⋯ + e_{m+4})`.
    Thm43Y,
    /// `e_{n³}` with height alternating between 1 and 3 — a sequence
    /// whose staircase values never settle.
    AlternatingSpike,
}

impl SeqFamily {
    pub fn generate(&self, n: u64) -> Result<SparseVector, AsymptoticsError> {
        Ok(match self {
            SeqFamily::Basis => SparseVector::unit(n),
            SeqFamily::ZAverage => z_average(n)?,
            SeqFamily::Thm43XOdd => thm43_x(2 * n + 1)?,
            SeqFamily::Thm43XEven => thm43_x(2 * n + 2)?,
            SeqFamily::Thm43Y => thm43_y(n)?,
            SeqFamily::AlternatingSpike => {
                let height = if n % 2 == 0 { 3 } else { 1 };
                SparseVector::from_entries(
                    ScalarMode::Exact,
                    [(n * n * n, Scalar::int(height))],
                )
                .expect("spike")
            }
        })
    }
}

/// Index tuples for the staircase rungs, one index per row, strictly
/// increasing within each tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    /// Rung `t` uses `base·ratio^t, base·ratio^{t+1}, …` — each rung is a
    /// further-spread copy of the previous one.
    Geometric { base: u64, ratio: u64, depth: usize },
    /// Hand-picked tuples, for families whose supports move at different
    /// speeds (e.g. pairing `x_n` with a `y_m` just beyond its support).
    Explicit(Vec<Vec<u64>>),
}

impl Schedule {
    pub fn depth(&self) -> usize {
        match self {
            Schedule::Geometric { depth, .. } => *depth,
            Schedule::Explicit(tuples) => tuples.len(),
        }
    }

    pub fn tuple(&self, rung: usize, rows: usize) -> Result<Vec<u64>, AsymptoticsError> {
        match self {
            Schedule::Geometric { base, ratio, depth } => {
                if rung >= *depth {
                    return Err(AsymptoticsError::RungOutOfRange(rung));
                }
                Ok((0..rows)
                    .map(|i| base * ratio.pow((rung + i) as u32))
                    .collect())
            }
            Schedule::Explicit(tuples) => {
                let tuple = tuples
                    .get(rung)
                    .ok_or(AsymptoticsError::RungOutOfRange(rung))?;
                if tuple.len() != rows {
                    return Err(AsymptoticsError::TupleLength {
                        rows,
                        got: tuple.len(),
                    });
                }
                Ok(tuple.clone())
            }
        }
    }
}

/// A staircase specification: rows with coefficients, the order in which
/// the row indices grow, and the index schedule.
#[derive(Debug, Clone)]
pub struct IteratedLimitSpec {
    pub rows: Vec<(SeqFamily, Scalar)>,
    /// `order[t]` is the row whose index is the `t`-th smallest of the
    /// tuple; the identity order `[0, 1, …]` matches
    /// `lim_{n_1} … lim_{n_m}` with the last row's index innermost.
    pub order: Vec<usize>,
    pub schedule: Schedule,
    pub space: SeqSpace,
    pub tol: f64,
}

impl IteratedLimitSpec {
    pub fn identity_order(
        rows: Vec<(SeqFamily, Scalar)>,
        schedule: Schedule,
        space: SeqSpace,
    ) -> Self {
        let order = (0..rows.len()).collect();
        IteratedLimitSpec {
            rows,
            order,
            schedule,
            space,
            tol: 1e-6,
        }
    }

    fn check_order(&self) -> Result<(), AsymptoticsError> {
        let m = self.rows.len();
        let mut seen = vec![false; m];
        for &r in &self.order {
            if r >= m || seen[r] {
                return Err(AsymptoticsError::BadPermutation { rows: m });
            }
            seen[r] = true;
        }
        if self.order.len() != m {
            return Err(AsymptoticsError::BadPermutation { rows: m });
        }
        Ok(())
    }
}

/// Evaluates `‖Σ b_i x^i_{n_i}‖` at one rung of the schedule.
pub fn staircase_norm(
    spec: &IteratedLimitSpec,
    rung: usize,
) -> Result<Scalar, AsymptoticsError> {
    spec.check_order()?;
    let m = spec.rows.len();
    let tuple = spec.schedule.tuple(rung, m)?;
    let mut terms: Vec<(usize, SparseVector)> = Vec::with_capacity(m);
    for (t, &row) in spec.order.iter().enumerate() {
        let x = spec.rows[row].0.generate(tuple[t])?;
        terms.push((row, x));
    }
    for a in 0..terms.len() {
        for b in (a + 1)..terms.len() {
            if !terms[a].1.disjoint_from(&terms[b].1) {
                return Err(AsymptoticsError::SupportOverlap {
                    a: terms[a].0,
                    b: terms[b].0,
                    rung,
                });
            }
        }
    }
    let exact = spec.space == SeqSpace::Tsirelson
        && spec
            .rows
            .iter()
            .all(|(_, b)| b.mode() == ScalarMode::Exact);
    let mode = if exact {
        ScalarMode::Exact
    } else {
        ScalarMode::Float
    };
    let mut sum = SparseVector::zero(mode);
    for (row, x) in terms {
        let coeff = &spec.rows[row].1;
        let term = if exact {
            x.scale(coeff)
        } else {
            x.to_float_mode().scale(&coeff.to_float_mode())
        }
        .map_err(EngineError::from)?;
        sum = sum.try_add(&term).map_err(EngineError::from)?;
    }
    Ok(spec.space.norm(&sum)?.value)
}

/// The result of walking the whole schedule.
#[derive(Debug, Clone)]
pub struct LimitEstimate {
    pub value: Scalar,
    pub converged: bool,
    /// `(index tuple, staircase value)` per rung, in schedule order.
    pub trace: Vec<(Vec<u64>, Scalar)>,
}

/// Walks the schedule and reports the last value, declaring convergence
/// when the final two rungs agree within `spec.tol`.
pub fn estimate_iterated_limit(
    spec: &IteratedLimitSpec,
) -> Result<LimitEstimate, AsymptoticsError> {
    let depth = spec.schedule.depth();
    if depth < 3 {
        return Err(AsymptoticsError::ShallowSchedule(depth));
    }
    let mut trace = Vec::with_capacity(depth);
    for rung in 0..depth {
        let tuple = spec.schedule.tuple(rung, spec.rows.len())?;
        let value = staircase_norm(spec, rung)?;
        trace.push((tuple, value));
    }
    let last = trace[depth - 1].1.clone();
    let prev = &trace[depth - 2].1;
    let converged = (last.to_f64() - prev.to_f64()).abs() < spec.tol;
    Ok(LimitEstimate {
        value: last,
        converged,
        trace,
    })
}

/// `‖Σ a_i x_{n_i}‖` at successive spread-out indices `n_1 < n_2 < ⋯`
/// all at or beyond `spread_base`.  For the subsymmetric spaces `S` and
/// `Y` on their bases this *is* the spreading-model value.
pub fn spreading_model_value(
    family: SeqFamily,
    coefficients: &[Scalar],
    spread_base: u64,
    space: SeqSpace,
) -> Result<Scalar, AsymptoticsError> {
    let mut sum = SparseVector::zero(ScalarMode::Float);
    let mut n = spread_base;
    for a in coefficients {
        let mut x = family.generate(n)?.to_float_mode();
        while !x.disjoint_from(&sum)
            || x.min_support() < sum.max_support()
        {
            n += 1;
            x = family.generate(n)?.to_float_mode();
        }
        sum = sum
            .try_add(&x.scale(&a.to_float_mode()).map_err(EngineError::from)?)
            .map_err(EngineError::from)?;
        n += 1;
    }
    Ok(space.norm(&sum)?.value)
}

/// Trace of `‖x + x_n‖` along a geometric index ladder.
#[derive(Debug, Clone)]
pub struct TypeDeterminingReport {
    pub stabilized: bool,
    pub trace: Vec<(u64, f64)>,
}

/// Checks whether `lim_n ‖x + x_n‖` looks settled: evaluates along the
/// ladder (skipping indices whose supports still meet `supp x`) and
/// requires all successive differences below `tol`.
pub fn type_determining_check(
    x: &SparseVector,
    family: SeqFamily,
    space: SeqSpace,
    depth: usize,
    tol: f64,
) -> Result<TypeDeterminingReport, AsymptoticsError> {
    let mut trace = Vec::with_capacity(depth);
    let mut n = 2u64;
    for _ in 0..depth {
        let mut xn = family.generate(n)?;
        while !xn.disjoint_from(x) || xn.min_support() <= x.max_support() {
            n += 1;
            xn = family.generate(n)?;
        }
        let exact = space == SeqSpace::Tsirelson && x.mode() == ScalarMode::Exact;
        let sum = if exact {
            x.try_add(&xn)
        } else {
            x.to_float_mode().try_add(&xn.to_float_mode())
        }
        .map_err(EngineError::from)?;
        trace.push((n, space.norm(&sum)?.value.to_f64()));
        n += 1;
    }
    let stabilized = trace
        .windows(2)
        .all(|w| (w[0].1 - w[1].1).abs() < tol);
    Ok(TypeDeterminingReport { stabilized, trace })
}

/// Both orderings of the same Schlumprecht block multiset, their `S`
/// norms, and the lower bound `(n/f(n))·(d/2)` the reversed layout must
/// beat.
#[derive(Debug, Clone)]
pub struct SchlumprechtOrderReport {
    pub forward: f64,
    pub reversed: f64,
    /// `reversed / forward` — how much reordering the same distribution
    /// of blocks changes the norm.
    pub ratio: f64,
    pub lower_bound: f64,
    pub bound_holds: bool,
    /// Per column `j`: measured `‖u_j‖` against the closed form
    /// `d·f(q_j)/f(d·q_j)`.
    pub group_norms: Vec<(f64, f64)>,
}

pub fn schlumprecht_order_experiment(
    n: usize,
    d: usize,
    q: Vec<u64>,
) -> Result<SchlumprechtOrderReport, AsymptoticsError> {
    let forward_family = schlumprecht_family(SchlumprechtLayout::new(
        n,
        d,
        q.clone(),
        BlockOrder::Forward,
    )?)?;
    let reversed_family = schlumprecht_family(SchlumprechtLayout::new(
        n,
        d,
        q.clone(),
        BlockOrder::Reversed,
    )?)?;
    let total = |family: &crate::constructions::SchlumprechtFamily| {
        let mut sum = SparseVector::zero(ScalarMode::Float);
        for (_, _, block) in &family.blocks {
            sum = sum.try_add(block).expect("disjoint blocks");
        }
        sum
    };
    let forward = SeqSpace::Schlumprecht
        .norm(&total(&forward_family))?
        .value
        .to_f64();
    let reversed = SeqSpace::Schlumprecht
        .norm(&total(&reversed_family))?
        .value
        .to_f64();
    let fn_ = SchlumprechtRule::f(n);
    let lower_bound = (n as f64 / fn_) * (d as f64 / 2.0);
    let mut group_norms = Vec::with_capacity(n);
    for j in 1..=n {
        let u = forward_family.group(j);
        let measured = SeqSpace::Schlumprecht.norm(&u)?.value.to_f64();
        let qj = q[j - 1] as usize;
        let predicted =
            d as f64 * SchlumprechtRule::f(qj) / SchlumprechtRule::f(d * qj);
        group_norms.push((measured, predicted));
    }
    Ok(SchlumprechtOrderReport {
        forward,
        reversed,
        ratio: reversed / forward,
        lower_bound,
        bound_holds: lower_bound <= reversed + 1e-9,
        group_norms,
    })
}

/// The grid-space asymmetry measurement: the same unit cells read as a
/// permissible collection (columns increasing with the row) versus
/// reversed (anti-diagonal).
#[derive(Debug, Clone)]
pub struct XkAsymmetryReport {
    pub identity: f64,
    pub reversed: f64,
    pub ratio: f64,
}

pub fn xk_asymmetry(
    cfg: &XkConfig,
    base_col: u64,
    spread: u64,
) -> Result<XkAsymmetryReport, AsymptoticsError> {
    let k = cfg.k;
    let base = base_col.max(k as u64);
    let spread = spread.max(1);
    let identity_cells: Vec<(usize, u64, f64)> = (1..=k)
        .map(|i| (i, base + (i as u64 - 1) * spread, 1.0))
        .collect();
    let reversed_cells: Vec<(usize, u64, f64)> = (1..=k)
        .map(|i| (i, base + (k as u64 - i as u64) * spread, 1.0))
        .collect();
    let identity = xk_norm(
        &crate::vector::GridVector::new(k, identity_cells).map_err(EngineError::from)?,
        cfg,
    )?
    .value;
    let reversed = xk_norm(
        &crate::vector::GridVector::new(k, reversed_cells).map_err(EngineError::from)?,
        cfg,
    )?
    .value;
    Ok(XkAsymmetryReport {
        identity,
        reversed,
        ratio: identity / reversed,
    })
}
