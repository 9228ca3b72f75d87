//! Command-line driver tying the workspace together: build coresets and
//! audit them, generate certified hard instances, sweep accuracies into
//! size/error curves, and solve 1-d k-median exactly.
//!
//! Five subcommands share one configuration surface ([`ExperimentConfig`]):
//!
//! * `build` constructs a summary of the input with the selected algorithm,
//!   audits it, and writes the summary as CSV next to a JSON report;
//! * `genhard` emits a hard instance as CSV together with the certificate
//!   sidecar recording the closed-form costs it was built to realize;
//! * `audit` measures a summary against reference data, or replays a
//!   certificate sidecar against an instance file;
//! * `curve` runs one construction across a list of accuracies and tabulates
//!   `(eps, size, max_rel_error, runtime)` as CSV;
//! * `solve` reports the exact weighted 1-d k-median optimum.
//!
//! Every JSON report carries `"schema": 1`, the effective parameters of the
//! run (seed included), and its wall time in a separate `"timing"` field, so
//! re-running a command with the same seed and inputs reproduces the report
//! byte for byte outside that one field. Inputs are either CSV files or
//! compact generator specs like `uniform:100000` (see [`dataset`]).

pub mod commands;
pub mod config;
pub mod dataset;
pub mod report;

pub use commands::{cmd_audit, cmd_build, cmd_curve, cmd_genhard, cmd_solve, run};
pub use config::{Algo, AuditKind, Command, ExperimentConfig, Variant};
pub use dataset::{resolve_input, Family, ResolvedInput};

use coreset_core::CoreError;
use coreset_disc::DiscError;
use coreset_hardgen::HardGenError;
use coreset_oned::OnedError;
use coreset_verify::VerifyError;
use thiserror::Error;

/// How a command finished. Audit verdicts are data, not errors: a command
/// that ran to completion but found its target violated reports
/// [`Outcome::AuditFailed`] so the binary can exit with status 2 instead of
/// the usage/I-O status 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The command completed and every checked target held.
    Success,
    /// The command completed but an audit target or replay check failed.
    AuditFailed,
}

/// Errors raised by the command implementations.
#[derive(Debug, Error)]
pub enum CliError {
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// `--input` named neither an existing file nor a generator spec.
    #[error("input `{input}` is neither an existing file nor a generator spec like uniform:100000")]
    UnknownInput { input: String },
    /// A generator spec had the right head but a malformed body.
    #[error("bad generator spec `{spec}`: {reason}")]
    BadGeneratorSpec { spec: String, reason: &'static str },
    /// Accuracy targets live in the open unit interval.
    #[error("accuracy must lie in (0, 1), got {eps}")]
    BadAccuracy { eps: f64 },
    /// The selected operation is defined for one-dimensional data only.
    #[error("{what} needs 1-d data, got dimension {dim}")]
    NotOneDimensional { what: &'static str, dim: usize },
    /// Exact audits exist for one and two centers; anything larger must use
    /// the stochastic auditor.
    #[error("exact audits support k = 1 or 2, got k = {k}; use --audit stochastic")]
    ExactAuditUnsupported { k: usize },
    /// `audit` needs a summary to measure or a certificate to replay.
    #[error("audit needs --summary <file> or --certificate <file>")]
    MissingSummary,
    /// A certificate file was missing a field or had an unusable shape.
    #[error("bad certificate: {detail}")]
    BadCertificate { detail: String },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Oned(#[from] OnedError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    HardGen(#[from] HardGenError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Wraps an I/O error with the path it concerned.
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
