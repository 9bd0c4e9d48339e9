//! Norm computation on finitely supported vectors in Tsirelson-type
//! sequence spaces.
//!
//! The spaces covered are
//!
//! * Tsirelson's space `T` and its `k`-functionals `‖·‖_k`,
//! * Schlumprecht's space `S`,
//! * Tzafriri's subsymmetric space `Y = Ti(2; 1/2)`,
//! * the upper-triangular grid spaces `X_k` (an `ℓ_q → ℓ_p` maximization
//!   over permissible collections) and their `ℓ_p` direct sum.
//!
//! The first three norms are defined by implicit equations of the form
//! `‖x‖ = max(‖x‖_∞, sup penalty(n) · Σ ‖E_i x‖)` over successive set
//! families `E_1 < ⋯ < E_n`.  On finitely supported vectors the engines
//! resolve these by dynamic programming over sub-intervals of the
//! support; [`oracle`] holds a brute-force enumeration over arbitrary
//! successive set families used to validate the interval reduction.
//!
//! On top of the engines, [`constructions`] generates the explicit
//! vector families used by the experiments (ℓ₁ⁿ-averages, corresponding
//! families, Schlumprecht block layouts, permissible grid collections)
//! and [`asymptotics`] measures iterated limits, spreading-model values
//! and asymmetry ratios.  [`experiments`] bundles the named regression
//! experiments behind the `tsnorm` CLI; see the `examples/` directory
//! for direct library usage.

pub mod asymptotics;
pub mod constructions;
mod dp;
pub mod experiments;
pub mod expr;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod spaces;
pub mod vector;
pub mod witness;

pub use scalar::{Scalar, ScalarError, ScalarMode};
pub use spaces::{
    lp_sum_norm, schlumprecht_norm, tsirelson_k_norm, tsirelson_norm, tzafriri_norm,
    xk_inner_value, xk_norm, Component, EngineError, NormResult, Precision, SeqSpace, SpaceTag,
    XkConfig, XkError, XkNorm,
};
pub use vector::{GridVector, Interval, Lp, SparseVector, VectorError};
pub use witness::Witness;
