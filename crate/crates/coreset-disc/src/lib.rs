//! Discrepancy-based summarization for power-of-distance clustering costs.
//!
//! The pipeline has three stages:
//!
//! * points in the unit ball are lifted ([`lift_phi`]) so that a squared
//!   distance to a nearby center becomes an inner product against a matching
//!   lifted center ([`lift_psi`]) — the identity is exact, turning cost
//!   queries about the original set into polynomial queries about the lifted
//!   one;
//! * a balanced sign coloring of the lifted set is computed ([`color`]) whose
//!   signed moment tensors are small across the low orders;
//!   [`tensor_disc_estimate`] measures them, and [`class_discrepancy_estimate`]
//!   probes the same signed-cost gap directly, without the lifting detour;
//! * one color class is kept with reweighted survivors ([`halve`]), and
//!   halving repeats until the subset reaches its target size
//!   ([`mixed_coreset`]); the result carries an empirical audit of the mixed
//!   additive-multiplicative error it promises.
//!
//! Every randomized step is driven by an explicit seed, so colorings,
//! subsets, and audit verdicts are reproducible byte-for-byte.

mod classdisc;
mod coloring;
mod lift;
mod mixed;
mod tensor;

pub use classdisc::{class_discrepancy_estimate, signed_cost_at};
pub use coloring::{
    color, coloring_potential, random_balanced_signs, SignColoring, DEFAULT_ORDER_CAP,
};
pub use lift::{lift_phi, lift_psi, LiftedPoint, CENTER_NORM_LIMIT};
pub use mixed::{
    default_query_radii, halve, mixed_coreset, mixed_coreset_with_constant, HalvingRound,
    MixedCoreset, DEFAULT_HALVING_CONSTANT,
};
pub use tensor::tensor_disc_estimate;

use coreset_core::CoreError;
use coreset_verify::VerifyError;
use thiserror::Error;

/// Errors raised by the lifting, coloring, and halving operations.
#[derive(Debug, Error)]
pub enum DiscError {
    /// Lifting and halving are defined for points in the closed unit ball.
    #[error("point {index} has norm {norm}, outside the unit ball")]
    NotInUnitBall { index: usize, norm: f64 },
    /// Lifted centers must stay inside the shrunken ball that keeps every
    /// lifted inner product a genuine squared distance.
    #[error("center norm {norm} exceeds the limit {limit}")]
    CenterOutOfRange { norm: f64, limit: f64 },
    /// Query and rescaling radii must be at least 1; smaller balls reduce to
    /// this case through the shrink-map identity.
    #[error("radius must be at least 1, got {r}")]
    BadRadius { r: f64 },
    /// The operation needs at least one point.
    #[error("point set is empty")]
    Empty,
    /// A single point admits no balanced split.
    #[error("cannot halve a single point")]
    CannotHalve,
    /// Target accuracy must lie in (0, 1).
    #[error("accuracy must lie in (0, 1), got {eps}")]
    BadAccuracy { eps: f64 },
    /// The halving size constant must be positive and finite.
    #[error("size constant must be positive, got {c}")]
    BadSizeConstant { c: f64 },
    /// Tensor order must be at least 1.
    #[error("tensor order must be at least 1")]
    ZeroOrder,
    /// Points disagree on the ambient dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A coloring must assign exactly one sign per point.
    #[error("coloring assigns {signs} signs to {points} points")]
    LengthMismatch { points: usize, signs: usize },
    /// Halving requires a balanced coloring.
    #[error("coloring is unbalanced: {plus} plus signs against {minus} minus signs")]
    Unbalanced { plus: usize, minus: usize },
    /// Signs are restricted to +1 and -1.
    #[error("sign at position {index} is {value}, expected +1 or -1")]
    BadSign { index: usize, value: i8 },
    /// Underlying point-set construction or cost evaluation failed.
    #[error(transparent)]
    Core(#[from] CoreError),
    /// The final audit of a halved subset failed to evaluate.
    #[error(transparent)]
    Verify(#[from] VerifyError),
}
