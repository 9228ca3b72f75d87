use coreset_oned::Sorted1D;

use crate::exact::fixed_origin_cost;
use crate::VerifyError;

/// A one-dimensional cost curve that is affine between known breakpoints.
///
/// Both audited cost families are of this shape as functions of the free
/// center `c`:
///
/// * the one-median cost `f(c) = Σ w·|x − c|` kinks exactly at the data
///   coordinates and grows with slope ±W beyond them;
/// * the fixed-origin pair cost `g(c) = Σ w·min(|x|, |x − c|)` kinks at the
///   data coordinates (distance kinks) and at `{2x} ∪ {0}` (assignment
///   switches: `|x − c| = |x|` exactly when `c = 2x` or `c = 0`), and is
///   constant beyond the outermost switch.
///
/// Values are stored at every breakpoint, so evaluation inside the knot range
/// is linear interpolation on one segment and evaluation outside extrapolates
/// with the stored end slopes; both are exact for curves of this class, up to
/// rounding.
#[derive(Debug, Clone)]
pub struct PiecewiseAffineCost {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    left_slope: f64,
    right_slope: f64,
}

impl PiecewiseAffineCost {
    /// Builds a curve from raw parts, validating shape.
    pub fn new(
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        left_slope: f64,
        right_slope: f64,
    ) -> Result<Self, VerifyError> {
        if breakpoints.is_empty() {
            return Err(VerifyError::Malformed {
                reason: "a cost curve needs at least one breakpoint",
            });
        }
        if breakpoints.len() != values.len() {
            return Err(VerifyError::Malformed {
                reason: "breakpoint and value counts differ",
            });
        }
        if !breakpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(VerifyError::Malformed {
                reason: "breakpoints must be strictly increasing",
            });
        }
        let finite = breakpoints
            .iter()
            .chain(values.iter())
            .all(|x| x.is_finite())
            && left_slope.is_finite()
            && right_slope.is_finite();
        if !finite {
            return Err(VerifyError::Malformed {
                reason: "curve data must be finite",
            });
        }
        Ok(Self {
            breakpoints,
            values,
            left_slope,
            right_slope,
        })
    }

    /// The one-median cost curve of a sorted set: knots at the distinct data
    /// coordinates, end slopes ∓ total weight.
    pub fn one_median(s: &Sorted1D) -> Result<Self, VerifyError> {
        if s.is_empty() || s.total_weight() <= 0.0 {
            return Err(VerifyError::EmptyReference);
        }
        let breakpoints = distinct(s.coords());
        let values = breakpoints.iter().map(|&b| s.cost_at(b)).collect();
        let w = s.total_weight();
        Self::new(breakpoints, values, -w, w)
    }

    /// The two-center cost curve with one center pinned at the origin, as a
    /// function of the free center: knots at `{x} ∪ {2x} ∪ {0}`, constant
    /// beyond the outermost assignment switch.
    pub fn with_fixed_origin_center(s: &Sorted1D) -> Result<Self, VerifyError> {
        if s.is_empty() || s.total_weight() <= 0.0 {
            return Err(VerifyError::EmptyReference);
        }
        let mut knots: Vec<f64> = Vec::with_capacity(2 * s.len() + 1);
        for &x in s.coords() {
            knots.push(x);
            knots.push(2.0 * x);
        }
        knots.push(0.0);
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let values = knots.iter().map(|&b| fixed_origin_cost(s, b)).collect();
        Self::new(knots, values, 0.0, 0.0)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn left_slope(&self) -> f64 {
        self.left_slope
    }

    pub fn right_slope(&self) -> f64 {
        self.right_slope
    }

    /// Evaluates the curve at `c`: stored value at a knot, linear
    /// interpolation strictly inside a segment, end-slope extrapolation
    /// outside the knot range.
    pub fn eval(&self, c: f64) -> f64 {
        let first = self.breakpoints[0];
        let last = *self.breakpoints.last().unwrap();
        if c <= first {
            return self.values[0] + (c - first) * self.left_slope;
        }
        if c >= last {
            return self.values[self.values.len() - 1] + (c - last) * self.right_slope;
        }
        // First knot strictly greater than c bounds the segment on the right.
        let j = self.breakpoints.partition_point(|&b| b <= c);
        let (x0, x1) = (self.breakpoints[j - 1], self.breakpoints[j]);
        let (v0, v1) = (self.values[j - 1], self.values[j]);
        v0 + (c - x0) * ((v1 - v0) / (x1 - x0))
    }

    /// Slope of each interior segment, in order.
    pub fn segment_slopes(&self) -> Vec<f64> {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| (v[1] - v[0]) / (x[1] - x[0]))
            .collect()
    }

    /// Largest decrease between consecutive slopes (including the end
    /// slopes); 0 for a convex curve. The one-median curve is convex, the
    /// fixed-origin pair curve generally is not.
    pub fn convexity_defect(&self) -> f64 {
        let mut slopes = Vec::with_capacity(self.breakpoints.len() + 1);
        slopes.push(self.left_slope);
        slopes.extend(self.segment_slopes());
        slopes.push(self.right_slope);
        slopes
            .windows(2)
            .map(|w| (w[0] - w[1]).max(0.0))
            .fold(0.0, f64::max)
    }
}

fn distinct(sorted: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = sorted.to_vec();
    out.dedup();
    out
}
