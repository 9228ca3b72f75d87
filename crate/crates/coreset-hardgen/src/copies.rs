//! Tiling the 1-d interval instance into far-apart translated copies, and
//! the parametrized query family that probes the result with `k` centers.
//!
//! With `k/2` copies separated by much more than their extent, any `k`
//! centers split into per-copy budgets; copies granted three centers can be
//! served as cheaply as the single-copy instance, while copies granted one
//! center pay a bounded single-center cost. Sliding the middle center of a
//! chosen copy across its interval traces out the same curved cost profile
//! the single-copy instance exhibits.

use crate::{HardGenError, Interval1DInstance};
use coreset_core::{CenterSet, WeightedPointSet};

/// A 1-d instance made of `k/2` translated copies of an interval instance.
#[derive(Debug, Clone)]
pub struct IntervalCopies {
    base: Interval1DInstance,
    k: usize,
    separation: f64,
    points: WeightedPointSet,
}

impl IntervalCopies {
    /// The single-copy instance each copy translates.
    pub fn base(&self) -> &Interval1DInstance {
        &self.base
    }

    /// The center budget the instance is hard for; there are `k/2` copies.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn copy_count(&self) -> usize {
        self.k / 2
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    /// The weighted union of all copies (dimension 1).
    pub fn points(&self) -> &WeightedPointSet {
        &self.points
    }

    /// Translation offset of copy `i` (0-based).
    pub fn offset(&self, copy: usize) -> f64 {
        copy as f64 * self.separation
    }

    /// Left endpoint of interval `interval` inside copy `copy`.
    pub fn left(&self, copy: usize, interval: usize) -> f64 {
        self.offset(copy) + self.base.intervals()[interval].left
    }

    /// Right endpoint of interval `interval` inside copy `copy`.
    pub fn right(&self, copy: usize, interval: usize) -> f64 {
        self.offset(copy) + self.base.intervals()[interval].right
    }
}

/// Default distance between consecutive copies: far enough that no point
/// is ever served across a copy boundary by any center family used here.
pub fn default_copy_separation(k: usize, extent: f64) -> f64 {
    1e6 * k as f64 * extent.max(1.0)
}

/// Lays out `k/2` copies of `base`, the i-th translated by `i · separation`.
///
/// `k` must be a positive even number and the separation must exceed twice
/// the copy extent, so per-copy costs decompose.
pub fn gen_k_copies(
    base: &Interval1DInstance,
    k: usize,
    separation: f64,
) -> Result<IntervalCopies, HardGenError> {
    if k == 0 || k % 2 != 0 {
        return Err(HardGenError::OddParameter { name: "k", value: k });
    }
    let extent = base.extent();
    if !separation.is_finite() || separation <= 2.0 * extent {
        return Err(HardGenError::SeparationTooSmall { separation, extent });
    }
    let copies = k / 2;
    let n = base.points().len();
    let mut coords = Vec::with_capacity(copies * n);
    let mut weights = Vec::with_capacity(copies * n);
    for copy in 0..copies {
        let offset = copy as f64 * separation;
        for (p, w) in base.points().iter() {
            coords.push(offset + p[0]);
            weights.push(w);
        }
    }
    let points = WeightedPointSet::new(1, coords, weights)?;
    Ok(IntervalCopies {
        base: base.clone(),
        k,
        separation,
        points,
    })
}

/// Builds the `k`-center query family `Q(t)`.
///
/// Each `(copy, interval)` entry in `chosen` grants that copy three
/// centers: the copy's origin, a center swept to fraction `t ∈ [1/3, 1]`
/// across the chosen interval, and the interval's right endpoint. Every
/// other copy gets a single center at its origin. Choosing `k/4` copies
/// yields exactly `k` centers.
pub fn query_family(
    copies: &IntervalCopies,
    t: f64,
    chosen: &[(usize, usize)],
) -> Result<CenterSet, HardGenError> {
    if !(1.0 / 3.0..=1.0).contains(&t) {
        return Err(HardGenError::BadQueryPosition { t });
    }
    let copy_count = copies.copy_count();
    let interval_count = copies.base().interval_count();
    if chosen.len() > copy_count {
        return Err(HardGenError::TooManyChosen {
            chosen: chosen.len(),
            copies: copy_count,
        });
    }
    let mut picked: Vec<Option<usize>> = vec![None; copy_count];
    for &(copy, interval) in chosen {
        if copy >= copy_count {
            return Err(HardGenError::CopyIndex {
                index: copy,
                count: copy_count,
            });
        }
        if interval >= interval_count {
            return Err(HardGenError::IntervalIndex {
                index: interval,
                count: interval_count,
            });
        }
        if picked[copy].replace(interval).is_some() {
            return Err(HardGenError::DuplicateChosenCopy { index: copy });
        }
    }

    let mut centers = Vec::new();
    for (copy, pick) in picked.iter().enumerate() {
        let origin = copies.offset(copy);
        centers.push(origin);
        if let Some(interval) = *pick {
            let iv = copies.base().intervals()[interval];
            centers.push(origin + iv.left + t * iv.length());
            centers.push(origin + iv.right);
        }
    }
    Ok(CenterSet::new(1, centers)?)
}
