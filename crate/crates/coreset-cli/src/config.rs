//! The command-line surface: one experiment configuration per invocation.
//!
//! Defaults are chosen so the short forms in the module examples work:
//! `build` defaults to Algorithm 1 at ε = 0.1 with one center, `genhard`
//! to the quarter-accuracy interval instance, and the audit method is
//! picked from the data when not forced (exact for 1-d inputs small enough
//! for the arrangement sweep, stochastic otherwise).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Which coreset construction a command drives.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    /// Adaptive bucket coreset for 1-d 1-median (size ~ ε^(-1/2)·log(1/ε)).
    Alg1,
    /// Fixed-threshold bucket coreset for 1-d k-median (size ≤ c·k/ε).
    Baseline,
    /// Discrepancy halving for (1,z)-clustering in the unit ball.
    Mixed,
}

impl Algo {
    /// Stable tag used in reports and file names.
    pub fn tag(self) -> &'static str {
        match self {
            Algo::Alg1 => "alg1",
            Algo::Baseline => "baseline",
            Algo::Mixed => "mixed",
        }
    }
}

/// How a built summary is measured against its reference.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditKind {
    /// Exhaustive piecewise-affine sweep; exact for 1-d data with k ≤ 2.
    Exact,
    /// Seeded multistart search; any dimension and exponent, lower bound.
    Stochastic,
}

impl AuditKind {
    /// Stable tag used in reports.
    pub fn tag(self) -> &'static str {
        match self {
            AuditKind::Exact => "exact",
            AuditKind::Stochastic => "stochastic",
        }
    }
}

/// Which hard instance `genhard` emits.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Geometric intervals with decaying density in 1-d.
    Interval,
    /// k/2 translated copies of the interval instance.
    Copies,
    /// Planted orthonormal half-bases on parallel subspaces.
    SubspaceMain,
    /// Planted full bases probed by per-subspace queries.
    SubspaceAppendix,
}

impl Variant {
    /// Stable tag used in reports.
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Interval => "interval",
            Variant::Copies => "copies",
            Variant::SubspaceMain => "subspace-main",
            Variant::SubspaceAppendix => "subspace-appendix",
        }
    }
}

/// Parsed invocation: exactly one subcommand with its flags.
#[derive(Parser, Debug)]
#[command(
    name = "coreset-cli",
    version,
    about = "Build, audit, and stress-test clustering coresets"
)]
pub struct ExperimentConfig {
    #[command(subcommand)]
    pub command: Command,
}

/// The five operations the driver exposes.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a coreset of the input and audit it against its target.
    Build(BuildArgs),
    /// Generate a hard instance with its certificate sidecar.
    Genhard(GenhardArgs),
    /// Audit a summary against reference data, or replay a certificate.
    Audit(AuditArgs),
    /// Sweep accuracies and tabulate size, error, and runtime as CSV.
    Curve(CurveArgs),
    /// Solve weighted 1-d k-median exactly.
    Solve(SolveArgs),
}

/// Flags of the `build` subcommand.
#[derive(Args, Debug, Clone)]
pub struct BuildArgs {
    /// Input data: a CSV file or a generator spec like uniform:100000.
    #[arg(long)]
    pub input: String,
    /// Output stem: writes <output>.csv (the coreset) and <output>.json.
    #[arg(long)]
    pub output: PathBuf,
    /// Coreset construction to run.
    #[arg(long, value_enum, default_value_t = Algo::Alg1)]
    pub algo: Algo,
    /// Target relative accuracy, in (0, 1).
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    /// Number of centers the audit defends against.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Cost exponent; effective for the mixed construction and stochastic
    /// audits (the bucket constructions are 1-median machinery).
    #[arg(long, default_value_t = 2.0)]
    pub z: f64,
    /// Seed for input generators and randomized audits.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Audit method; defaults to exact where exact is available.
    #[arg(long, value_enum)]
    pub audit: Option<AuditKind>,
}

/// Flags of the `genhard` subcommand.
#[derive(Args, Debug, Clone)]
pub struct GenhardArgs {
    /// Which hard instance to generate.
    #[arg(long, value_enum, default_value_t = Variant::Interval)]
    pub variant: Variant,
    /// Output stem: writes <output>.csv (the points) and <output>.json
    /// (the certificate sidecar).
    #[arg(long)]
    pub output: PathBuf,
    /// Accuracy parameter of the interval construction.
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    /// Number of centers the instance is hard for.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Per-subspace basis dimension of the subspace constructions.
    #[arg(long, default_value_t = 8)]
    pub d: usize,
    /// Cost exponent the subspace constructions are sized for.
    #[arg(long, default_value_t = 2.0)]
    pub z: f64,
    /// Recorded in the report; the generators themselves are deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Flags of the `audit` subcommand.
#[derive(Args, Debug, Clone)]
pub struct AuditArgs {
    /// Reference data: a CSV file or a generator spec.
    #[arg(long)]
    pub input: String,
    /// Summary to audit against the reference.
    #[arg(long)]
    pub summary: Option<String>,
    /// Certificate sidecar to replay against the input instead.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    /// Report file; written to stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Audit method.
    #[arg(long, value_enum, default_value_t = AuditKind::Exact)]
    pub audit: AuditKind,
    /// Number of centers to defend against.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Cost exponent of the stochastic audit.
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,
    /// Seed of the stochastic search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Pass/fail threshold; without it the audit is informational.
    #[arg(long)]
    pub eps: Option<f64>,
}

/// Flags of the `curve` subcommand.
#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// Input data: a CSV file or a generator spec.
    #[arg(long)]
    pub input: String,
    /// Output stem: writes <output>.csv (the table) and <output>.json.
    #[arg(long)]
    pub output: PathBuf,
    /// Coreset construction to sweep.
    #[arg(long, value_enum, default_value_t = Algo::Alg1)]
    pub algo: Algo,
    /// Accuracies to sweep, comma separated; an empty sweep writes only the
    /// CSV header.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub eps: Vec<f64>,
    /// Number of centers the audits defend against.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Cost exponent for the mixed construction and stochastic audits.
    #[arg(long, default_value_t = 2.0)]
    pub z: f64,
    /// Seed for input generators and randomized audits.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Audit method; defaults to exact where exact is available.
    #[arg(long, value_enum)]
    pub audit: Option<AuditKind>,
}

/// Flags of the `solve` subcommand.
#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    /// Input data: a CSV file or a generator spec.
    #[arg(long)]
    pub input: String,
    /// Number of centers.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Seed for input generators.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file; written to stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}
