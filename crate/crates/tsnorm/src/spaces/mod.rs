//! Norm engines for the sequence spaces `T`, `S`, `Y`, the grid spaces
//! `X_k`, and their `ℓ_p` direct sums.

mod seq;
mod xk;

pub use seq::{schlumprecht_norm, tsirelson_k_norm, tsirelson_norm, tzafriri_norm};
pub use xk::{xk_inner_value, xk_norm, xk_norm_grid_search, XkConfig, XkError, XkNorm};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Scalar, ScalarMode};
use crate::vector::{GridVector, SparseVector, VectorError};
use crate::witness::Witness;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("{space:?} engine has no exact mode (its penalty factors are irrational)")]
    ExactModeUnsupported { space: SpaceTag },
    #[error("k-functional requires k >= 2, got {0}")]
    BadK(usize),
    #[error(transparent)]
    Vector(#[from] VectorError),
    #[error(transparent)]
    Xk(#[from] XkError),
}

/// Which space a result came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceTag {
    T,
    Tk(usize),
    S,
    Y,
    Xk,
    LpSum,
}

/// The three sequence-space engines (the grid spaces are separate; their
/// input is a [`GridVector`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqSpace {
    Tsirelson,
    Schlumprecht,
    Tzafriri,
}

impl SeqSpace {
    pub fn tag(self) -> SpaceTag {
        match self {
            SeqSpace::Tsirelson => SpaceTag::T,
            SeqSpace::Schlumprecht => SpaceTag::S,
            SeqSpace::Tzafriri => SpaceTag::Y,
        }
    }

    pub fn norm(self, x: &SparseVector) -> Result<NormResult, EngineError> {
        match self {
            SeqSpace::Tsirelson => Ok(tsirelson_norm(x)),
            SeqSpace::Schlumprecht => schlumprecht_norm(x),
            SeqSpace::Tzafriri => tzafriri_norm(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    Exact,
    Float { tolerance: f64 },
}

/// Default reporting tolerance for float-mode engines.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// A computed norm with the partition structure that attained it.
#[derive(Debug, Clone, PartialEq)]
pub struct NormResult {
    pub value: Scalar,
    pub witness: Option<Witness>,
    pub engine: SpaceTag,
    pub precision: Precision,
}

impl NormResult {
    pub(crate) fn zero(mode: ScalarMode, engine: SpaceTag) -> Self {
        NormResult {
            value: Scalar::zero(mode),
            witness: None,
            engine,
            precision: match mode {
                ScalarMode::Exact => Precision::Exact,
                ScalarMode::Float => Precision::Float {
                    tolerance: FLOAT_TOLERANCE,
                },
            },
        }
    }
}

/// Schlumprecht's penalty function `f(k) = log₂(k + 1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SchlumprechtConfig;

impl SchlumprechtConfig {
    pub fn f(&self, k: usize) -> f64 {
        crate::dp::SchlumprechtRule::f(k)
    }
}

/// One summand of an `ℓ_p` direct sum.
#[derive(Debug, Clone)]
pub enum Component {
    Seq(SeqSpace, SparseVector),
    Grid(XkConfig, GridVector),
}

/// `(Σ ‖component‖^p)^{1/p}` using each component's own engine.
pub fn lp_sum_norm(components: &[Component], p: f64) -> Result<f64, EngineError> {
    if !(p >= 1.0) {
        return Err(EngineError::Vector(VectorError::BadExponent(p)));
    }
    let mut total = 0.0f64;
    for component in components {
        let value = match component {
            Component::Seq(space, x) => space.norm(x)?.value.to_f64(),
            Component::Grid(cfg, x) => xk_norm(x, cfg)?.value,
        };
        total += value.powf(p);
    }
    Ok(total.powf(1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::vector::GridVector;

    #[test]
    fn lp_sum_empty_is_zero() {
        assert_eq!(lp_sum_norm(&[], 2.0).unwrap(), 0.0);
    }

    #[test]
    fn lp_sum_single_component() {
        let x = SparseVector::unit(1);
        let v = lp_sum_norm(&[Component::Seq(SeqSpace::Tsirelson, x)], 2.0).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn lp_sum_two_orthogonal_grid_pairs() {
        // two X_2 permissible pairs of norm 1 each, p = 2
        let cfg = XkConfig::new(2, 2.0, 4.0 / 3.0, 4.0).unwrap();
        let r = 4.0;
        let b = 0.5f64.powf(1.0 / r); // (b^r + b^r)^{1/r} = 1
        let g = GridVector::new(2, [(1, 1, b), (2, 2, b)]).unwrap();
        let v = lp_sum_norm(
            &[
                Component::Grid(cfg.clone(), g.clone()),
                Component::Grid(cfg, g),
            ],
            2.0,
        )
        .unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn schlumprecht_config_values() {
        let f = SchlumprechtConfig;
        assert!((f.f(2) - 3f64.log2()).abs() < 1e-15);
        assert!(f.f(3) > f.f(2));
    }

    #[test]
    fn zero_result_modes() {
        let r = NormResult::zero(ScalarMode::Exact, SpaceTag::T);
        assert_eq!(r.value, Scalar::int(0));
        assert_eq!(r.precision, Precision::Exact);
    }
}
