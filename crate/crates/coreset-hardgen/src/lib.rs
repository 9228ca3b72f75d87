//! Generators for worst-case clustering instances, together with the
//! closed-form cost certificates that make them worst-case.
//!
//! Two families are produced:
//!
//! * a one-dimensional instance built from geometrically growing intervals
//!   with geometrically decaying density ([`gen_interval_instance`]), whose
//!   two-center cost is bounded yet strongly curved inside every interval —
//!   any summary that skips an interval is caught by that curvature. The
//!   k-center generalization tiles translated copies ([`gen_k_copies`]) and
//!   probes them with a parametrized query family ([`query_family`]);
//! * a (d+1)-dimensional instance of orthonormal bases planted on far-apart
//!   parallel subspaces ([`gen_subspace_instance`]). Three certificate center
//!   families ([`orthogonal_centers`], [`antipodal_centers`],
//!   [`hadamard_centers`]) and an adversarial per-subspace query
//!   ([`adversarial_queries`]) have machine-checkable closed-form costs, and
//!   [`inequality_ledger`] evaluates every labeled equality and inequality
//!   those certificates impose on a purported summary.
//!
//! Everything is deterministic given its parameters (and, for the one seeded
//! search in [`antipodal_centers`], the seed), so generated instances and
//! their certificate sidecars are reproducible byte-for-byte.

mod certificate;
mod copies;
mod hadamard;
mod interval;
mod ledger;
mod queries;
mod subspace;

pub use certificate::{copies_certificate, interval_certificate, subspace_certificate};
pub use copies::{default_copy_separation, gen_k_copies, query_family, IntervalCopies};
pub use hadamard::{hadamard, largest_hadamard_order, HadamardBasis};
pub use interval::{
    feature_audit, gen_interval_instance, CurvatureCheck, FeatureAuditReport, Interval,
    Interval1DInstance, SlopeCheck, MAX_INTERVALS,
};
pub use ledger::{inequality_ledger, InequalityLedger, LedgerLine};
pub use queries::{adversarial_queries, anchor_queries, GapReport};
pub use subspace::{
    antipodal_centers, basis_cost_lower_bound, basis_cost_to_antipodal, gen_subspace_instance,
    hadamard_centers, orthogonal_centers, partition_by_anchor, size_constraint_ratio,
    small_group_threshold,
    AlignmentReport, AnchorPartition, GroupAlignment, SubspaceInstance, SubspaceVariant,
};

use coreset_core::CoreError;
use thiserror::Error;

/// Errors raised by the instance generators and certificate builders.
#[derive(Debug, Error)]
pub enum HardGenError {
    /// Interval generator accuracy must lie in (0, 1].
    #[error("interval accuracy must lie in (0, 1], got {eps}")]
    BadEps { eps: f64 },
    /// The interval discretization needs at least 4 points per interval for
    /// its curvature features to survive sampling.
    #[error("need at least 4 points per interval, got {m0}")]
    TooFewPoints { m0: usize },
    /// Interval endpoints grow as 4^i; past [`MAX_INTERVALS`] intervals they
    /// can no longer be represented exactly.
    #[error("{count} intervals exceed the exactly representable limit of {max}")]
    TooManyIntervals { count: usize, max: usize },
    /// A generator parameter must be a positive even number (copies and
    /// subspaces come in pairs; basis blocks split in half).
    #[error("{name} must be a positive even number, got {value}")]
    OddParameter { name: &'static str, value: usize },
    /// A generator parameter must be positive.
    #[error("{name} must be positive, got 0")]
    ZeroParameter { name: &'static str },
    /// Translated copies must be separated by more than the copy extent, or
    /// the per-copy cost decomposition breaks down.
    #[error("copy separation {separation} must exceed twice the copy extent {extent}")]
    SeparationTooSmall { separation: f64, extent: f64 },
    /// Query-family position parameter is restricted to the curved third of
    /// the chosen interval.
    #[error("query position t={t} is outside [1/3, 1]")]
    BadQueryPosition { t: f64 },
    /// A chosen interval index does not exist in the instance.
    #[error("interval index {index} out of range for {count} intervals")]
    IntervalIndex { index: usize, count: usize },
    /// A chosen copy index does not exist in the instance.
    #[error("copy index {index} out of range for {count} copies")]
    CopyIndex { index: usize, count: usize },
    /// Each copy may receive at most one three-center query block.
    #[error("copy {index} chosen more than once")]
    DuplicateChosenCopy { index: usize },
    /// More copies were chosen for three-center queries than exist.
    #[error("{chosen} chosen copies exceed the {copies} available")]
    TooManyChosen { chosen: usize, copies: usize },
    /// Hadamard bases exist only for power-of-two orders.
    #[error("hadamard order {m} is not a power of two")]
    NotPowerOfTwo { m: usize },
    /// Hadamard row index must lie in 1..=m.
    #[error("hadamard row {ell} out of range 1..={m}")]
    HadamardIndex { ell: usize, m: usize },
    /// No unit direction orthogonal to both the basis block and the group's
    /// summary points exists; the group is too large to be treated as small.
    #[error("group {group} with {size} points admits no orthogonal direction")]
    NoOrthogonalDirection { group: usize, size: usize },
    /// The seeded alignment search failed to validate the small-group cost
    /// inequality within the restart budget; certificates would be unsound.
    #[error("alignment search failed to validate group {group} after {restarts} restarts")]
    AlignmentSearchFailed { group: usize, restarts: u32 },
    /// The operation is defined for the other instance layout.
    #[error("operation requires the {required} instance layout")]
    WrongVariant { required: &'static str },
    /// Summary points live in a different ambient dimension than the
    /// instance.
    #[error("dimension mismatch: instance dim {expected}, summary dim {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// A claimed subset point does not coincide with any instance point.
    #[error("summary point {index} is not a point of the instance")]
    NotSubsetPoint { index: usize },
    /// A closed-form certificate failed to match its direct evaluation;
    /// points to a construction bug, never silently ignored.
    #[error("certificate mismatch in {what}: direct {got} vs closed form {want}")]
    CertificateMismatch {
        what: &'static str,
        got: f64,
        want: f64,
    },
    /// Underlying point-set construction or cost evaluation failed.
    #[error(transparent)]
    Core(#[from] CoreError),
}
