use coreset_core::{kahan_sum, KahanSum, WeightedPointSet};

use crate::OnedError;

/// A weighted 1-d point set, sorted by coordinate, with cached prefix sums.
///
/// `prefix_w[i]` is the total weight of the first `i` points and
/// `prefix_wx[i]` the corresponding Σ w·x; both carry a leading 0 and are
/// accumulated with compensation so that range statistics obtained by
/// subtraction stay accurate even for n in the 10^5 range.
#[derive(Debug, Clone)]
pub struct Sorted1D {
    coords: Vec<f64>,
    weights: Vec<f64>,
    prefix_w: Vec<f64>,
    prefix_wx: Vec<f64>,
}

/// A contiguous index range of a [`Sorted1D`] with its substitution
/// statistics: total weight, span, weighted mean, and the cumulative error
/// δ = Σ w(p)·|p − mean| that bounds the cost change when the range is
/// replaced by its mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bucket {
    /// First index (inclusive).
    pub lo: usize,
    /// Last index (inclusive).
    pub hi: usize,
    /// Total weight of the range.
    pub weight: f64,
    /// Coordinate span `coord(hi) − coord(lo)`.
    pub span: f64,
    /// Weighted mean coordinate.
    pub mean: f64,
    /// Cumulative error δ = Σ w(p)·|p − mean| over the range.
    pub delta: f64,
}

impl Sorted1D {
    /// Sorts `(coord, weight)` pairs by coordinate and builds prefix sums.
    ///
    /// Weights must be nonnegative and finite; zero weights are accepted
    /// (they simply contribute nothing to any statistic).
    pub fn from_unsorted(coords: Vec<f64>, weights: Vec<f64>) -> Result<Self, OnedError> {
        let set = WeightedPointSet::new(1, coords, weights)?;
        Ok(Self::from_point_set(&set).expect("dim was checked"))
    }

    /// Unit-weight convenience constructor.
    pub fn from_coords(coords: Vec<f64>) -> Result<Self, OnedError> {
        let n = coords.len();
        Self::from_unsorted(coords, vec![1.0; n])
    }

    /// Converts a validated 1-d [`WeightedPointSet`].
    pub fn from_point_set(set: &WeightedPointSet) -> Result<Self, OnedError> {
        if set.dim() != 1 {
            return Err(OnedError::NotOneDimensional { dim: set.dim() });
        }
        let mut pairs: Vec<(f64, f64)> = set.iter().map(|(p, w)| (p[0], w)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let n = pairs.len();
        let mut coords = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let mut prefix_w = Vec::with_capacity(n + 1);
        let mut prefix_wx = Vec::with_capacity(n + 1);
        let mut acc_w = KahanSum::new();
        let mut acc_wx = KahanSum::new();
        prefix_w.push(0.0);
        prefix_wx.push(0.0);
        for (x, w) in pairs {
            coords.push(x);
            weights.push(w);
            acc_w.add(w);
            acc_wx.add(w * x);
            prefix_w.push(acc_w.value());
            prefix_wx.push(acc_wx.value());
        }
        Ok(Self {
            coords,
            weights,
            prefix_w,
            prefix_wx,
        })
    }

    /// Back to the dimension-generic container (in sorted order).
    pub fn to_point_set(&self) -> WeightedPointSet {
        WeightedPointSet::new(1, self.coords.clone(), self.weights.clone())
            .expect("sorted data is already validated")
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, i: usize) -> f64 {
        self.coords[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        *self.prefix_w.last().unwrap_or(&0.0)
    }

    /// Total weight of points with index < `i`.
    pub fn weight_before(&self, i: usize) -> f64 {
        self.prefix_w[i]
    }

    /// Σ w·x over indices `[lo, hi]`.
    pub fn range_wx(&self, lo: usize, hi: usize) -> f64 {
        self.prefix_wx[hi + 1] - self.prefix_wx[lo]
    }

    /// Total weight over indices `[lo, hi]`.
    pub fn range_weight(&self, lo: usize, hi: usize) -> f64 {
        self.prefix_w[hi + 1] - self.prefix_w[lo]
    }

    /// First index whose coordinate is ≥ `x` (== `len()` if none).
    pub fn lower_bound(&self, x: f64) -> usize {
        self.coords.partition_point(|&c| c < x)
    }

    fn check_range(&self, lo: usize, hi: usize) -> Result<(), OnedError> {
        if lo > hi || hi >= self.len() {
            return Err(OnedError::BadRange {
                lo,
                hi,
                n: self.len(),
            });
        }
        Ok(())
    }

    /// Exact one-center cost Σ w(p)·|p − c| over indices `[lo, hi]`,
    /// evaluated from prefix sums in O(log n).
    pub fn cost_at_range(&self, lo: usize, hi: usize, c: f64) -> f64 {
        if lo > hi {
            return 0.0;
        }
        // Split the range at the center: points below pay c − x, points
        // above pay x − c.
        let split = self.coords[lo..=hi].partition_point(|&x| x < c) + lo;
        let below_w = self.range_weight_or_zero(lo, split);
        let below_wx = self.range_wx_or_zero(lo, split);
        let above_w = self.range_weight_or_zero(split, hi + 1);
        let above_wx = self.range_wx_or_zero(split, hi + 1);
        (c * below_w - below_wx) + (above_wx - c * above_w)
    }

    /// One-median cost of the whole set at center `c`.
    pub fn cost_at(&self, c: f64) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        self.cost_at_range(0, self.len() - 1, c)
    }

    fn range_weight_or_zero(&self, lo: usize, hi_excl: usize) -> f64 {
        if lo >= hi_excl {
            0.0
        } else {
            self.prefix_w[hi_excl] - self.prefix_w[lo]
        }
    }

    fn range_wx_or_zero(&self, lo: usize, hi_excl: usize) -> f64 {
        if lo >= hi_excl {
            0.0
        } else {
            self.prefix_wx[hi_excl] - self.prefix_wx[lo]
        }
    }

    /// Smallest coordinate whose cumulative weight reaches half the total;
    /// this is a minimizer of the one-median cost.
    pub fn weighted_median(&self) -> Result<f64, OnedError> {
        Ok(self.coord(self.weighted_median_index()?))
    }

    /// Index form of [`Sorted1D::weighted_median`].
    pub fn weighted_median_index(&self) -> Result<usize, OnedError> {
        let total = self.total_weight();
        if self.is_empty() || total <= 0.0 {
            return Err(OnedError::Empty);
        }
        let half = total / 2.0;
        // prefix_w[i + 1] is the cumulative weight through index i.
        let idx = self.prefix_w[1..].partition_point(|&cum| cum < half);
        Ok(idx.min(self.len() - 1))
    }

    /// Smallest index in `[lo, hi]` whose cumulative weight within the range
    /// reaches half the range weight — the leftmost weighted median, which
    /// minimizes the one-center cost of the range.
    pub fn weighted_median_index_range(&self, lo: usize, hi: usize) -> Result<usize, OnedError> {
        self.check_range(lo, hi)?;
        let w = self.range_weight(lo, hi);
        if w <= 0.0 {
            return Err(OnedError::ZeroWeightRange { lo, hi });
        }
        let target = self.prefix_w[lo] + w / 2.0;
        let idx = lo + self.prefix_w[lo + 1..hi + 2].partition_point(|&cum| cum < target);
        Ok(idx.min(hi))
    }

    /// Weighted-median index and the exact one-center cost of the range at
    /// that median.
    pub fn one_median_range(&self, lo: usize, hi: usize) -> Result<(usize, f64), OnedError> {
        let m = self.weighted_median_index_range(lo, hi)?;
        Ok((m, self.cost_at_range(lo, hi, self.coord(m))))
    }

    /// Exact statistics of the index range `[lo, hi]`.
    ///
    /// δ is evaluated by locating the mean among the coordinates and folding
    /// the two prefix-sum halves: δ = Σ_{p>μ} w·(p−μ) − Σ_{p<μ} w·(p−μ).
    pub fn bucket_stats(&self, lo: usize, hi: usize) -> Result<Bucket, OnedError> {
        self.check_range(lo, hi)?;
        let weight = self.range_weight(lo, hi);
        if weight <= 0.0 {
            return Err(OnedError::ZeroWeightRange { lo, hi });
        }
        let span = self.coords[hi] - self.coords[lo];
        // Clamp against rounding: the true mean lies inside the span.
        let mean = (self.range_wx(lo, hi) / weight).clamp(self.coords[lo], self.coords[hi]);
        let split = self.coords[lo..=hi].partition_point(|&x| x < mean) + lo;
        let below_w = self.range_weight_or_zero(lo, split);
        let below_wx = self.range_wx_or_zero(lo, split);
        let above_w = self.range_weight_or_zero(split, hi + 1);
        let above_wx = self.range_wx_or_zero(split, hi + 1);
        let delta = (above_wx - mean * above_w) + (mean * below_w - below_wx);
        Ok(Bucket {
            lo,
            hi,
            weight,
            span,
            mean,
            delta: delta.max(0.0),
        })
    }

    /// δ of the range `[lo, hi]` (0 for an empty or weightless range).
    ///
    /// For fixed `lo`, δ is nondecreasing in `hi`: extending a bucket by a
    /// point q ≥ all current points moves the mean right by
    /// Δμ = w_q(q−μ)/(W+w_q) and a direct expansion shows the δ increase is
    /// at least w_q(q−μ′) ≥ 0. The greedy builders rely on this to binary
    /// search the maximal bucket end.
    pub fn delta(&self, lo: usize, hi: usize) -> f64 {
        match self.bucket_stats(lo, hi) {
            Ok(b) => b.delta,
            Err(_) => 0.0,
        }
    }

    /// Largest `hi ∈ [lo, hi_cap]` with δ([lo, hi]) ≤ `threshold`, found by
    /// binary search (δ is monotone in `hi`). A single point always fits
    /// (δ = 0), so the result is well defined.
    pub fn maximal_bucket_end(&self, lo: usize, hi_cap: usize, threshold: f64) -> usize {
        debug_assert!(lo <= hi_cap && hi_cap < self.len());
        let (mut ok, mut bad) = (lo, hi_cap + 1);
        while bad - ok > 1 {
            let mid = ok + (bad - ok) / 2;
            if self.delta(lo, mid) <= threshold {
                ok = mid;
            } else {
                bad = mid;
            }
        }
        ok
    }

    /// Verifies the prefix arrays against a direct compensated re-sum.
    /// Used by tests; returns the worst relative discrepancy.
    pub fn prefix_consistency(&self) -> f64 {
        let w_direct = kahan_sum(self.weights.iter().copied());
        let wx_direct = kahan_sum(self.coords.iter().zip(&self.weights).map(|(x, w)| x * w));
        let n = self.len();
        let dw = (self.prefix_w[n] - w_direct).abs() / w_direct.abs().max(1e-300);
        let dwx = (self.prefix_wx[n] - wx_direct).abs() / wx_direct.abs().max(1e-300);
        dw.max(dwx)
    }
}
