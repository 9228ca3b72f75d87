//! One-dimensional clustering machinery: sorted prefix-sum point sets,
//! bucket/block statistics, exact weighted k-median, and the two bucket
//! coreset builders (the fixed-threshold baseline and the block-adaptive
//! construction).
//!
//! Everything is built on [`Sorted1D`], which caches prefix sums of weights
//! and weight·coordinate so that range weight, range mean, one-median cost at
//! a point, and the cumulative error δ of a bucket are all O(log n) queries.

mod build;
mod kmedian;
mod sorted;

pub use build::{
    baseline_coreset, baseline_coreset_detailed, block_partition, coreset_1d_1median,
    coreset_1d_1median_calibrated, coreset_1d_1median_detailed, distinct_band_count,
    BaselineBuild, Block, Coreset1DBuild, DEFAULT_CALIBRATION,
};
pub use kmedian::{exact_kmedian_1d, Kmedian1DSolution};
pub use sorted::{Bucket, Sorted1D};

use coreset_core::CoreError;
use thiserror::Error;

/// Errors for 1-d set construction and the coreset builders.
#[derive(Debug, Error, PartialEq)]
pub enum OnedError {
    #[error("operation requires a non-empty point set")]
    Empty,
    #[error("index range [{lo}, {hi}] is empty or out of bounds for n={n}")]
    BadRange { lo: usize, hi: usize, n: usize },
    #[error("range [{lo}, {hi}] carries zero total weight")]
    ZeroWeightRange { lo: usize, hi: usize },
    #[error("expected 1-d input, got dim={dim}")]
    NotOneDimensional { dim: usize },
    #[error("eps={eps} is outside (0, 1)")]
    BadEps { eps: f64 },
    #[error("k must be at least 1")]
    BadK,
    #[error("block partition requires a positive optimum, got {opt}")]
    NonPositiveOpt { opt: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
}
