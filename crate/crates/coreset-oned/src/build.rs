use coreset_core::WeightedPointSet;

use crate::{exact_kmedian_1d, Bucket, OnedError, Sorted1D};

/// Default ratio between the requested accuracy and the internal bucket
/// threshold of [`coreset_1d_1median`]. Running the construction at ε/4
/// turns the O(ε) error guarantee of the analysis into an audited error
/// that stays below the requested ε with margin.
pub const DEFAULT_CALIBRATION: f64 = 4.0;

/// A maximal run of points whose one-median cost (against the full set)
/// falls in the same dyadic band `[2^i·opt, 2^{i+1}·opt)`.
#[derive(Debug, Clone)]
pub struct Block {
    /// Dyadic band exponent i ≥ 0 (band 0 is clipped below at the optimum,
    /// where the cost function attains its minimum).
    pub index: u32,
    /// First point index (inclusive).
    pub lo: usize,
    /// Last point index (inclusive).
    pub hi: usize,
    /// Cost band `[2^i·opt, 2^{i+1}·opt)`.
    pub band: (f64, f64),
    /// Greedy maximal buckets; left empty by [`block_partition`], filled by
    /// the coreset builder.
    pub buckets: Vec<Bucket>,
}

/// Full diagnostics of one adaptive-coreset construction.
#[derive(Debug, Clone)]
pub struct Coreset1DBuild {
    /// The coreset: one weighted mean per bucket, ascending.
    pub coreset: WeightedPointSet,
    /// Exact one-median optimum of the input.
    pub opt: f64,
    /// The weighted median used as the cost anchor.
    pub median: f64,
    /// Internal threshold accuracy ε′ = ε / calibration.
    pub eps_internal: f64,
    /// Trimmed extreme-weight prefix, if any.
    pub left_endpoint: Option<Bucket>,
    /// Trimmed extreme-weight suffix, if any.
    pub right_endpoint: Option<Bucket>,
    /// Blocks (left half toward the median, then right half), with their
    /// greedy maximal buckets.
    pub blocks: Vec<Block>,
}

/// Baseline construction diagnostics.
#[derive(Debug, Clone)]
pub struct BaselineBuild {
    pub coreset: WeightedPointSet,
    pub buckets: Vec<Bucket>,
    /// Exact k-median optimum used to set the threshold.
    pub opt: f64,
    /// The uniform bucket threshold ε·opt/k.
    pub threshold: f64,
}

fn check_eps(eps: f64) -> Result<(), OnedError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(OnedError::BadEps { eps });
    }
    Ok(())
}

/// Drops zero-weight points (they carry no cost mass but would make bucket
/// means ill-defined); returns `None` when the input needs no filtering.
fn positive_part(s1: &Sorted1D) -> Option<Sorted1D> {
    if s1.weights().iter().all(|&w| w > 0.0) {
        return None;
    }
    let (coords, weights): (Vec<f64>, Vec<f64>) = s1
        .coords()
        .iter()
        .zip(s1.weights())
        .filter(|(_, &w)| w > 0.0)
        .map(|(&x, &w)| (x, w))
        .unzip();
    Some(Sorted1D::from_unsorted(coords, weights).expect("filtered data stays valid"))
}

fn band_exponent(f: f64, opt: f64) -> u32 {
    if f <= opt {
        0
    } else {
        ((f / opt).log2().floor() as i64).max(0) as u32
    }
}

/// Partitions `[lo, hi]` into maximal runs sharing a cost band. The cost of
/// each point is measured against the *full* set `s1`.
fn block_partition_range(
    s1: &Sorted1D,
    lo: usize,
    hi: usize,
    opt: f64,
) -> Result<Vec<Block>, OnedError> {
    if !(opt > 0.0) {
        return Err(OnedError::NonPositiveOpt { opt });
    }
    if lo > hi || hi >= s1.len() {
        return Ok(Vec::new());
    }
    let mut blocks: Vec<Block> = Vec::new();
    for i in lo..=hi {
        let f = s1.cost_at(s1.coord(i));
        let e = band_exponent(f, opt);
        match blocks.last_mut() {
            Some(b) if b.index == e => b.hi = i,
            _ => blocks.push(Block {
                index: e,
                lo: i,
                hi: i,
                band: (opt * f64::powi(2.0, e as i32), opt * f64::powi(2.0, e as i32 + 1)),
                buckets: Vec::new(),
            }),
        }
    }
    Ok(blocks)
}

/// Splits the whole set into maximal same-band runs of the one-median cost
/// function. Cost bands `[2^i·opt, 2^{i+1}·opt)` are dyadic in the supplied
/// optimum; band 0 absorbs any point at (or, through rounding, marginally
/// below) the optimum.
pub fn block_partition(s1: &Sorted1D, opt: f64) -> Result<Vec<Block>, OnedError> {
    if s1.is_empty() {
        return Err(OnedError::Empty);
    }
    if !(opt > 0.0) {
        return Err(OnedError::NonPositiveOpt { opt });
    }
    block_partition_range(s1, 0, s1.len() - 1, opt)
}

/// Number of distinct cost bands among the blocks.
pub fn distinct_band_count(blocks: &[Block]) -> usize {
    let mut bands: Vec<u32> = blocks.iter().map(|b| b.index).collect();
    bands.sort_unstable();
    bands.dedup();
    bands.len()
}

/// Fills `[lo, hi]` with greedy maximal buckets under the δ-threshold.
fn greedy_buckets(
    s1: &Sorted1D,
    lo: usize,
    hi: usize,
    threshold: f64,
) -> Result<Vec<Bucket>, OnedError> {
    let mut out = Vec::new();
    let mut cur = lo;
    while cur <= hi {
        let end = s1.maximal_bucket_end(cur, hi, threshold);
        out.push(s1.bucket_stats(cur, end)?);
        cur = end + 1;
    }
    Ok(out)
}

/// Adaptive one-median coreset with the default internal calibration.
///
/// Trims an extreme-weight prefix and suffix into two endpoint buckets,
/// splits the remainder at the weighted median into dyadic cost-band blocks,
/// and fills each block with greedy maximal buckets whose cumulative error
/// respects δ ≤ ε′·2^i·opt. Replacing each bucket by its weighted mean gives
/// a coreset whose exact audited error stays below ε while the size scales
/// like ε^{-1/2}·log(1/ε) instead of the baseline's ε^{-1}.
pub fn coreset_1d_1median(s1: &Sorted1D, eps: f64) -> Result<WeightedPointSet, OnedError> {
    Ok(coreset_1d_1median_detailed(s1, eps)?.coreset)
}

/// [`coreset_1d_1median`] with full diagnostics.
pub fn coreset_1d_1median_detailed(s1: &Sorted1D, eps: f64) -> Result<Coreset1DBuild, OnedError> {
    coreset_1d_1median_calibrated(s1, eps, DEFAULT_CALIBRATION)
}

/// Adaptive coreset with an explicit calibration constant (ε′ = ε/c).
pub fn coreset_1d_1median_calibrated(
    s1: &Sorted1D,
    eps: f64,
    calibration: f64,
) -> Result<Coreset1DBuild, OnedError> {
    check_eps(eps)?;
    assert!(
        calibration >= 1.0 && calibration.is_finite(),
        "calibration must be a finite constant ≥ 1"
    );
    let filtered = positive_part(s1);
    let s = filtered.as_ref().unwrap_or(s1);
    if s.is_empty() {
        return Err(OnedError::Empty);
    }
    let n = s.len();
    let total = s.total_weight();
    let med_idx = s.weighted_median_index()?;
    let median = s.coord(med_idx);
    let opt = s.cost_at(median);
    let eps_internal = eps / calibration;

    if opt <= 0.0 {
        // All mass on a single coordinate: that point is a perfect coreset.
        let coreset = WeightedPointSet::new(1, vec![median], vec![total])?;
        return Ok(Coreset1DBuild {
            coreset,
            opt: 0.0,
            median,
            eps_internal,
            left_endpoint: None,
            right_endpoint: None,
            blocks: Vec::new(),
        });
    }

    // Endpoint buckets: the longest prefix/suffix of cumulative weight at
    // most ⌊ε′·W⌋ (for unit weights, exactly the ⌊ε′n⌋ extreme points).
    // Clamped so the trim never crosses the median.
    let target = (eps_internal * total).floor();
    let a = if target <= 0.0 {
        0
    } else {
        // Largest a with weight(points [0, a-1]) ≤ target.
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            let mid = lo + (hi - lo + 1) / 2;
            if s.weight_before(mid) <= target {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        lo.min(med_idx)
    };
    let b = if target <= 0.0 {
        n - 1
    } else {
        // Smallest c with weight(points [c, n-1]) ≤ target; suffix starts at c.
        let (mut lo, mut hi) = (0usize, n);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if total - s.weight_before(mid) <= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        (lo.max(1) - 1).max(med_idx)
    };

    let left_endpoint = if a > 0 { Some(s.bucket_stats(0, a - 1)?) } else { None };
    let right_endpoint = if b + 1 < n {
        Some(s.bucket_stats(b + 1, n - 1)?)
    } else {
        None
    };

    // Dyadic blocks on each side of the median, each filled greedily.
    let mut blocks = block_partition_range(s, a, med_idx, opt)?;
    if med_idx < b {
        blocks.extend(block_partition_range(s, med_idx + 1, b, opt)?);
    }
    for block in &mut blocks {
        let threshold = eps_internal * block.band.0;
        block.buckets = greedy_buckets(s, block.lo, block.hi, threshold)?;
    }

    let mut coords = Vec::new();
    let mut weights = Vec::new();
    if let Some(bk) = &left_endpoint {
        coords.push(bk.mean);
        weights.push(bk.weight);
    }
    for block in &blocks {
        for bk in &block.buckets {
            coords.push(bk.mean);
            weights.push(bk.weight);
        }
    }
    if let Some(bk) = &right_endpoint {
        coords.push(bk.mean);
        weights.push(bk.weight);
    }
    let coreset = WeightedPointSet::new(1, coords, weights)?;

    Ok(Coreset1DBuild {
        coreset,
        opt,
        median,
        eps_internal,
        left_endpoint,
        right_endpoint,
        blocks,
    })
}

/// Fixed-threshold bucket coreset for k-median: greedy maximal buckets with
/// δ ≤ ε·OPT_k/k over the whole range, each replaced by its weighted mean.
/// Size grows like k/ε on adversarial inputs. When the exact optimum is 0
/// (at most k distinct coordinates) the distinct points themselves are
/// returned, which is an exact coreset.
pub fn baseline_coreset(s1: &Sorted1D, k: usize, eps: f64) -> Result<WeightedPointSet, OnedError> {
    Ok(baseline_coreset_detailed(s1, k, eps)?.coreset)
}

/// [`baseline_coreset`] with bucket-level diagnostics.
pub fn baseline_coreset_detailed(
    s1: &Sorted1D,
    k: usize,
    eps: f64,
) -> Result<BaselineBuild, OnedError> {
    check_eps(eps)?;
    if k == 0 {
        return Err(OnedError::BadK);
    }
    let filtered = positive_part(s1);
    let s = filtered.as_ref().unwrap_or(s1);
    if s.is_empty() {
        return Err(OnedError::Empty);
    }
    let n = s.len();
    let sol = exact_kmedian_1d(s, k)?;

    if sol.opt <= 0.0 {
        // At most k distinct coordinates: return them with their run weights.
        let mut coords = Vec::new();
        let mut weights = Vec::new();
        let starts = &sol.starts;
        for (t, &lo) in starts.iter().enumerate() {
            let hi = if t + 1 < starts.len() { starts[t + 1] - 1 } else { n - 1 };
            coords.push(s.coord(lo));
            weights.push(s.range_weight(lo, hi));
        }
        let coreset = WeightedPointSet::new(1, coords, weights)?;
        return Ok(BaselineBuild {
            coreset,
            buckets: Vec::new(),
            opt: 0.0,
            threshold: 0.0,
        });
    }

    let threshold = eps * sol.opt / k as f64;
    let buckets = greedy_buckets(s, 0, n - 1, threshold)?;
    let coords: Vec<f64> = buckets.iter().map(|b| b.mean).collect();
    let weights: Vec<f64> = buckets.iter().map(|b| b.weight).collect();
    let coreset = WeightedPointSet::new(1, coords, weights)?;
    Ok(BaselineBuild {
        coreset,
        buckets,
        opt: sol.opt,
        threshold,
    })
}
