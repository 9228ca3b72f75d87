//! Quality audits for coreset constructions.
//!
//! An audit takes a reference set `P` and a candidate summary `S` and reports
//! the worst relative cost error `sup_C |cost(P,C) - cost(S,C)| / cost(P,C)`
//! over a family of center sets, together with a witness center set that
//! attains the reported value.
//!
//! Three exact auditors cover the one-dimensional cases that admit complete
//! candidate enumeration:
//!
//! * [`audit_1d_1median`] — single free center on the line;
//! * [`audit_1d_2median_fixed0`] — two centers with one pinned at the origin;
//! * [`audit_1d_2median`] — two free centers, via the full arrangement of
//!   kink and assignment-switch lines (capped at
//!   [`ARRANGEMENT_CAP`] total input points).
//!
//! For everything else [`audit_stochastic`] provides a seeded multistart
//! lower bound on the same supremum, and [`check_mixed_coreset`] samples
//! scaled center families for summaries that must hold simultaneously at
//! every scale.

mod exact;
mod mixed;
mod pwa;
mod stochastic;

pub use exact::{audit_1d_1median, audit_1d_2median, audit_1d_2median_fixed0, ARRANGEMENT_CAP};
pub use mixed::{check_mixed_coreset, MixedCheckReport};
pub use pwa::PiecewiseAffineCost;
pub use stochastic::{audit_stochastic, audit_stochastic_with_starts};

use coreset_core::{CenterSet, CoreError};
use thiserror::Error;

/// Errors produced by the audit routines.
#[derive(Debug, Error)]
pub enum VerifyError {
    /// The reference set is empty or carries no weight, so every relative
    /// error is 0/0 and the audit is vacuous.
    #[error("reference set is empty or has zero total weight")]
    EmptyReference,
    /// The exact two-center arrangement audit is quadratic in the candidate
    /// coordinates and refuses oversized inputs.
    #[error(
        "arrangement audit over {size} points exceeds the cap of {cap}; \
         use the stochastic auditor for instances this large"
    )]
    ArrangementCapExceeded { size: usize, cap: usize },
    /// The two sets live in different ambient dimensions.
    #[error("dimension mismatch between reference ({reference}) and summary ({summary})")]
    DimensionMismatch { reference: usize, summary: usize },
    /// A reference point escapes the unit ball in a check that requires
    /// normalized inputs.
    #[error("reference point {index} has norm {norm} > 1; inputs must lie in the unit ball")]
    NotInUnitBall { index: usize, norm: f64 },
    /// Accuracy parameter must be positive.
    #[error("accuracy parameter must be positive and finite, got {eps}")]
    BadEps { eps: f64 },
    /// A sampling budget of zero evaluations cannot report anything.
    #[error("evaluation budget must be positive")]
    ZeroBudget,
    /// The randomized search needs at least one center.
    #[error("k must be at least 1")]
    ZeroCenters,
    /// No radii were supplied for the scaled-family check.
    #[error("at least one query radius is required")]
    NoRadii,
    /// A query radius must be a positive length.
    #[error("query radius must be positive and finite, got {r}")]
    BadRadius { r: f64 },
    /// A hand-built piecewise-affine curve fails a shape requirement.
    #[error("piecewise-affine curve is malformed: {reason}")]
    Malformed { reason: &'static str },
    /// Error bubbled up from the core primitives.
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Which auditor produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditMethod {
    /// Exact single-center audit on the line.
    ExactK1,
    /// Exact two-center audit with one center pinned at the origin.
    ExactK2Fixed,
    /// Exact free two-center audit via arrangement vertices.
    ExactK2,
    /// Seeded multistart search; a lower bound on the true supremum.
    Stochastic,
}

impl AuditMethod {
    /// Stable string tag used in serialized reports.
    pub fn tag(self) -> &'static str {
        match self {
            AuditMethod::ExactK1 => "exact-k1",
            AuditMethod::ExactK2Fixed => "exact-k2-fixed",
            AuditMethod::ExactK2 => "exact-k2",
            AuditMethod::Stochastic => "stochastic",
        }
    }
}

/// Outcome of an audit: the worst relative cost error found, the center set
/// that attains it, and enough bookkeeping to reproduce the run.
#[derive(Debug, Clone)]
pub struct AuditReport {
    /// Worst value of `|cost(P,C) - cost(S,C)| / cost(P,C)` encountered.
    /// Infinite when the summary pays where the reference pays nothing.
    pub max_rel_error: f64,
    /// Centers attaining `max_rel_error`; re-evaluating the two costs at
    /// these centers reproduces the reported value.
    pub witness_centers: CenterSet,
    /// Which auditor produced this report.
    pub method: AuditMethod,
    /// Number of center sets whose costs were evaluated.
    pub evaluations: u64,
    /// Seed of the randomized search, when one was used.
    pub seed: Option<u64>,
}

impl AuditReport {
    /// Serializes the report as a JSON object with stable field names.
    pub fn to_json(&self) -> serde_json::Value {
        let witness: Vec<Vec<f64>> = (0..self.witness_centers.k())
            .map(|i| self.witness_centers.center(i).to_vec())
            .collect();
        serde_json::json!({
            "method": self.method.tag(),
            "max_rel_error": self.max_rel_error,
            "witness": witness,
            "evaluations": self.evaluations,
            "seed": self.seed,
        })
    }
}
