//! Weighted point sets, center sets, and exact (k,z)-clustering cost.
//!
//! This crate is the numeric foundation shared by the 1-d coreset builders,
//! the auditors, and the instance generators. Everything here is exact in the
//! sense that no approximation beyond double precision is introduced: costs
//! are computed with exhaustive nearest-center assignment and compensated
//! summation, and ties are broken deterministically (lowest center index) so
//! that audits are reproducible bit-for-bit.
//!
//! ```
//! use coreset_core::{cost, CenterSet, CostParams, WeightedPointSet};
//!
//! let p = WeightedPointSet::unit_weights(1, vec![0.0, 1.0]).unwrap();
//! let c = CenterSet::new(1, vec![0.5]).unwrap();
//! assert_eq!(cost(&p, &c, CostParams::median()).unwrap(), 1.0);
//! ```

use thiserror::Error;

/// Errors for construction and evaluation of point/center sets.
#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: expected dim={expected}, got dim={got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("center set must be non-empty")]
    EmptyCenterSet,
    #[error("coordinate buffer length {len} is not a multiple of dim {dim}")]
    RaggedCoordinates { len: usize, dim: usize },
    #[error("expected {points} weights, got {weights}")]
    WeightCountMismatch { points: usize, weights: usize },
    #[error("non-finite coordinate at flat index {index}")]
    NonFiniteCoordinate { index: usize },
    #[error("weight at index {index} is negative or non-finite")]
    BadWeight { index: usize },
    #[error("total weight must be positive for a non-empty set")]
    ZeroTotalWeight,
    #[error("cost exponent z={z} is outside [1, inf)")]
    BadExponent { z: f64 },
    #[error("csv header {got:?} is not of the form x0,...,x{{d-1}}[,w]")]
    CsvHeader { got: String },
    #[error("csv line {line}: {reason}")]
    CsvRow { line: usize, reason: String },
}

/// Neumaier-compensated accumulator.
///
/// The auditors subtract near-equal sums of around `1e5` terms and then divide
/// by them; a plain left-to-right sum loses enough low bits to move reported
/// relative errors near the `1e-9` reproducibility tolerances. The
/// compensation keeps the accumulated error at a few ulps independent of n.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term, tracking the low-order bits lost by the addition.
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// The compensated total.
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of an iterator of terms.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut acc = KahanSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

/// A finite multiset of points in ℝ^d with nonnegative weights.
///
/// Coordinates are stored flat (row-major, `n * dim` entries). Duplicate
/// points are permitted; a non-empty set must carry positive total weight.
/// Immutable after construction, so shared references are safe to use from
/// multiple threads.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPointSet {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedPointSet {
    /// Builds a set from flat coordinates and per-point weights.
    pub fn new(dim: usize, coords: Vec<f64>, weights: Vec<f64>) -> Result<Self, CoreError> {
        if dim == 0 {
            return Err(CoreError::ZeroDimension);
        }
        if coords.len() % dim != 0 {
            return Err(CoreError::RaggedCoordinates {
                len: coords.len(),
                dim,
            });
        }
        let n = coords.len() / dim;
        if weights.len() != n {
            return Err(CoreError::WeightCountMismatch {
                points: n,
                weights: weights.len(),
            });
        }
        if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
            return Err(CoreError::NonFiniteCoordinate { index });
        }
        if let Some(index) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(CoreError::BadWeight { index });
        }
        let set = Self {
            dim,
            coords,
            weights,
        };
        if !set.is_empty() && set.total_weight() <= 0.0 {
            return Err(CoreError::ZeroTotalWeight);
        }
        Ok(set)
    }

    /// Builds a unit-weight set from flat coordinates.
    pub fn unit_weights(dim: usize, coords: Vec<f64>) -> Result<Self, CoreError> {
        let n = if dim == 0 { 0 } else { coords.len() / dim };
        Self::new(dim, coords, vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Coordinates of point `i` as a slice of length `dim`.
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Compensated total weight.
    pub fn total_weight(&self) -> f64 {
        kahan_sum(self.weights.iter().copied())
    }

    /// Iterates over `(coordinates, weight)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.coords
            .chunks_exact(self.dim)
            .zip(self.weights.iter().copied())
    }
}

/// A non-empty set of candidate centers in ℝ^d, stored flat like
/// [`WeightedPointSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSet {
    dim: usize,
    coords: Vec<f64>,
}

impl CenterSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self, CoreError> {
        if dim == 0 {
            return Err(CoreError::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(CoreError::EmptyCenterSet);
        }
        if coords.len() % dim != 0 {
            return Err(CoreError::RaggedCoordinates {
                len: coords.len(),
                dim,
            });
        }
        if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
            return Err(CoreError::NonFiniteCoordinate { index });
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of centers k ≥ 1.
    pub fn k(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn center(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }
}

/// The distance exponent z ≥ 1 of the clustering objective (z = 1 is
/// k-median, z = 2 is k-means).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostParams {
    z: f64,
}

impl CostParams {
    pub fn new(z: f64) -> Result<Self, CoreError> {
        if !z.is_finite() || z < 1.0 {
            return Err(CoreError::BadExponent { z });
        }
        Ok(Self { z })
    }

    /// z = 1.
    pub fn median() -> Self {
        Self { z: 1.0 }
    }

    /// z = 2.
    pub fn means() -> Self {
        Self { z: 2.0 }
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// Euclidean distance between two equal-length coordinate slices.
pub fn dist(p: &[f64], c: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), c.len(), "points of mismatched dimension");
    let mut sq = 0.0;
    for (a, b) in p.iter().zip(c) {
        let d = a - b;
        sq += d * d;
    }
    sq.sqrt()
}

/// `d^z` with exact fast paths for the common integer exponents.
pub fn dist_pow(d: f64, z: f64) -> f64 {
    if z == 1.0 {
        d
    } else if z == 2.0 {
        d * d
    } else if z == 3.0 {
        d * d * d
    } else {
        d.powf(z)
    }
}

/// Index of and distance to the nearest center; ties go to the lowest index.
pub fn nearest(p: &[f64], centers: &CenterSet) -> (usize, f64) {
    let mut best = (0usize, f64::INFINITY);
    for (i, c) in centers.iter().enumerate() {
        let d = dist(p, c);
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

fn check_dims(points: &WeightedPointSet, centers: &CenterSet) -> Result<(), CoreError> {
    if points.dim() != centers.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: points.dim(),
            got: centers.dim(),
        });
    }
    Ok(())
}

/// Exact clustering cost Σ_p w(p) · min_c ‖p − c‖^z.
///
/// Evaluates every point against every center (no pruning) and accumulates
/// with compensation; the empty point set costs 0.
pub fn cost(
    points: &WeightedPointSet,
    centers: &CenterSet,
    params: CostParams,
) -> Result<f64, CoreError> {
    check_dims(points, centers)?;
    let mut acc = KahanSum::new();
    for (p, w) in points.iter() {
        let (_, d) = nearest(p, centers);
        acc.add(w * dist_pow(d, params.z()));
    }
    Ok(acc.value())
}

/// Nearest-center index for every point, ties broken by lowest center index.
pub fn assign(points: &WeightedPointSet, centers: &CenterSet) -> Result<Vec<usize>, CoreError> {
    check_dims(points, centers)?;
    Ok(points.iter().map(|(p, _)| nearest(p, centers).0).collect())
}

/// Renders a point set in the shared CSV exchange format: header
/// `x0,...,x{d-1},w`, one point per row, floats printed with the shortest
/// representation that round-trips exactly.
pub fn to_csv(points: &WeightedPointSet) -> String {
    let mut out = String::new();
    for i in 0..points.dim() {
        out.push_str(&format!("x{i},"));
    }
    out.push_str("w\n");
    for (p, w) in points.iter() {
        for x in p {
            out.push_str(&format!("{x},"));
        }
        out.push_str(&format!("{w}\n"));
    }
    out
}

/// Parses the CSV exchange format back into a point set.
///
/// The header determines the dimension and whether a trailing weight column
/// is present; rows without one default every weight to 1. Blank lines are
/// skipped so trailing newlines are harmless.
pub fn from_csv(text: &str) -> Result<WeightedPointSet, CoreError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| CoreError::CsvHeader {
        got: String::new(),
    })?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_weights = cols.last() == Some(&"w");
    let dim = if has_weights { cols.len() - 1 } else { cols.len() };
    let header_ok = dim >= 1
        && cols
            .iter()
            .take(dim)
            .enumerate()
            .all(|(i, c)| *c == format!("x{i}"));
    if !header_ok {
        return Err(CoreError::CsvHeader {
            got: header.to_string(),
        });
    }

    let mut coords = Vec::new();
    let mut weights = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let expected = dim + usize::from(has_weights);
        if fields.len() != expected {
            return Err(CoreError::CsvRow {
                line: idx + 1,
                reason: format!("expected {expected} fields, got {}", fields.len()),
            });
        }
        for field in &fields[..dim] {
            coords.push(field.parse::<f64>().map_err(|e| CoreError::CsvRow {
                line: idx + 1,
                reason: format!("bad coordinate {field:?}: {e}"),
            })?);
        }
        weights.push(if has_weights {
            fields[dim].parse::<f64>().map_err(|e| CoreError::CsvRow {
                line: idx + 1,
                reason: format!("bad weight {:?}: {e}", fields[dim]),
            })?
        } else {
            1.0
        });
    }
    WeightedPointSet::new(dim, coords, weights)
}

/// Relative coreset error |costP − costS| / costP.
///
/// By convention, two zero costs agree perfectly (error 0) while a zero
/// reference cost against a non-zero surrogate is infinitely wrong.
pub fn relative_error(cost_p: f64, cost_s: f64) -> f64 {
    debug_assert!(cost_p >= 0.0 && cost_s >= 0.0, "costs must be nonnegative");
    if cost_p == 0.0 {
        if cost_s == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (cost_p - cost_s).abs() / cost_p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts1(coords: &[f64]) -> WeightedPointSet {
        WeightedPointSet::unit_weights(1, coords.to_vec()).unwrap()
    }

    #[test]
    fn cost_zero_when_centers_cover_points() {
        let p = pts1(&[0.0, 1.0]);
        let c = CenterSet::new(1, vec![0.0, 1.0]).unwrap();
        assert_eq!(cost(&p, &c, CostParams::median()).unwrap(), 0.0);
    }

    #[test]
    fn cost_of_symmetric_pair_about_median_center() {
        let p = pts1(&[0.0, 1.0]);
        let c = CenterSet::new(1, vec![0.5]).unwrap();
        assert_eq!(cost(&p, &c, CostParams::median()).unwrap(), 1.0);
    }

    #[test]
    fn assign_single_point_on_center() {
        let p = pts1(&[0.0]);
        let c = CenterSet::new(1, vec![0.0]).unwrap();
        assert_eq!(assign(&p, &c).unwrap(), vec![0]);
    }

    #[test]
    fn assign_breaks_ties_toward_lowest_index() {
        let p = pts1(&[0.5]);
        let c = CenterSet::new(1, vec![0.0, 1.0]).unwrap();
        assert_eq!(assign(&p, &c).unwrap(), vec![0]);
    }

    #[test]
    fn relative_error_basics() {
        assert_eq!(relative_error(10.0, 10.0), 0.0);
        assert!((relative_error(10.0, 9.0) - 0.1).abs() < 1e-15);
        assert_eq!(relative_error(0.0, 0.0), 0.0);
        assert_eq!(relative_error(0.0, 1.0), f64::INFINITY);
    }

    #[test]
    fn relative_error_of_certified_cost_pair() {
        // Certificate pair (kd/2, kd/2 − d|I|/√m) for k=4, d=8, m=8, |I|=2:
        // the reported error must be d|I|/(√m · kd/2).
        let (k, d, m, i) = (4.0f64, 8.0f64, 8.0f64, 2.0f64);
        let cost_p = k * d / 2.0;
        let cost_s = cost_p - d * i / m.sqrt();
        let expected = d * i / (m.sqrt() * cost_p);
        assert!((relative_error(cost_p, cost_s) - expected).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            WeightedPointSet::new(0, vec![], vec![]).unwrap_err(),
            CoreError::ZeroDimension
        );
        assert_eq!(
            WeightedPointSet::new(2, vec![0.0, 1.0, 2.0], vec![1.0]).unwrap_err(),
            CoreError::RaggedCoordinates { len: 3, dim: 2 }
        );
        assert_eq!(
            WeightedPointSet::new(1, vec![f64::NAN], vec![1.0]).unwrap_err(),
            CoreError::NonFiniteCoordinate { index: 0 }
        );
        assert_eq!(
            WeightedPointSet::new(1, vec![0.0], vec![-1.0]).unwrap_err(),
            CoreError::BadWeight { index: 0 }
        );
        assert_eq!(
            WeightedPointSet::new(1, vec![0.0], vec![0.0]).unwrap_err(),
            CoreError::ZeroTotalWeight
        );
        assert_eq!(CenterSet::new(1, vec![]).unwrap_err(), CoreError::EmptyCenterSet);
        assert_eq!(CostParams::new(0.5).unwrap_err(), CoreError::BadExponent { z: 0.5 });

        let p = pts1(&[0.0]);
        let c = CenterSet::new(2, vec![0.0, 0.0]).unwrap();
        assert_eq!(
            cost(&p, &c, CostParams::median()).unwrap_err(),
            CoreError::DimensionMismatch { expected: 1, got: 2 }
        );
    }

    #[test]
    fn empty_set_costs_zero() {
        let p = WeightedPointSet::new(3, vec![], vec![]).unwrap();
        let c = CenterSet::new(3, vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(cost(&p, &c, CostParams::means()).unwrap(), 0.0);
    }

    #[test]
    fn csv_round_trips_exactly() {
        let p = WeightedPointSet::new(
            2,
            vec![0.1, -2.5e-7, 1.0 / 3.0, 4.0e12],
            vec![1.0, 0.062_500_000_000_000_01],
        )
        .unwrap();
        let back = from_csv(&to_csv(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn csv_weight_column_defaults_to_one() {
        let set = from_csv("x0,x1\n1,2\n3,4\n").unwrap();
        assert_eq!(set.dim(), 2);
        assert_eq!(set.weights(), &[1.0, 1.0]);
        assert_eq!(set.coords(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(matches!(
            from_csv("a,b\n1,2\n").unwrap_err(),
            CoreError::CsvHeader { .. }
        ));
        assert!(matches!(
            from_csv("x0,w\n1\n").unwrap_err(),
            CoreError::CsvRow { line: 2, .. }
        ));
        assert!(matches!(
            from_csv("x0,w\n1,oops\n").unwrap_err(),
            CoreError::CsvRow { line: 2, .. }
        ));
    }

    #[test]
    fn kahan_recovers_cancellation() {
        // 1 + 1e-16 added 10^4 times: naive summation in this order drops
        // every small term; the compensated sum keeps them.
        let mut acc = KahanSum::new();
        acc.add(1.0);
        for _ in 0..10_000 {
            acc.add(1e-16);
        }
        acc.add(-1.0);
        let got = acc.value();
        assert!((got - 1e-12).abs() < 1e-18, "got {got}");
    }
}
