use coreset_core::{cost, relative_error, CenterSet, CostParams, WeightedPointSet};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::{AuditMethod, AuditReport, VerifyError};

/// Fraction of the bounding-box span used as the initial refinement step.
const INITIAL_STEP_FRACTION: f64 = 0.25;
/// Refinement stops once the step shrinks below this fraction of the span.
const MIN_STEP_FRACTION: f64 = 1e-9;

/// Seeded multistart search for centers where the summary's cost deviates
/// most from the reference, in any dimension and for any exponent.
///
/// Equivalent to [`audit_stochastic_with_starts`] with no caller-supplied
/// starting centers.
pub fn audit_stochastic(
    p: &WeightedPointSet,
    s: &WeightedPointSet,
    k: usize,
    params: CostParams,
    budget: u64,
    seed: u64,
) -> Result<AuditReport, VerifyError> {
    audit_stochastic_with_starts(p, s, k, params, budget, seed, &[])
}

/// [`audit_stochastic`] with explicit starting center sets that are
/// evaluated and refined before any random restarts.
///
/// Instance generators hand their certificate centers in through `starts`.
/// Every supplied start is evaluated as-is before any refinement or random
/// search can spend the budget, so as long as `budget ≥ starts.len()` the
/// report is at least as large as the best certificate gap.
///
/// The search repeatedly picks a start — a caller-supplied set, k reference
/// points, k summary points, or a uniform draw from the bounding box — and
/// hill-climbs the relative error by coordinate steps with a geometrically
/// shrinking step size. Every cost evaluation counts against `budget`; the
/// best center set over all starts is reported. The result is a lower bound
/// on the true worst case, deterministic for a fixed seed.
#[allow(clippy::too_many_arguments)]
pub fn audit_stochastic_with_starts(
    p: &WeightedPointSet,
    s: &WeightedPointSet,
    k: usize,
    params: CostParams,
    budget: u64,
    seed: u64,
    starts: &[CenterSet],
) -> Result<AuditReport, VerifyError> {
    if p.is_empty() || p.total_weight() <= 0.0 {
        return Err(VerifyError::EmptyReference);
    }
    if !s.is_empty() && s.dim() != p.dim() {
        return Err(VerifyError::DimensionMismatch {
            reference: p.dim(),
            summary: s.dim(),
        });
    }
    if k == 0 {
        return Err(VerifyError::ZeroCenters);
    }
    if budget == 0 {
        return Err(VerifyError::ZeroBudget);
    }
    for st in starts {
        if st.dim() != p.dim() {
            return Err(VerifyError::DimensionMismatch {
                reference: p.dim(),
                summary: st.dim(),
            });
        }
    }

    let dim = p.dim();
    let (bbox_lo, bbox_hi) = bounding_box(p, s);
    let max_span = bbox_lo
        .iter()
        .zip(&bbox_hi)
        .map(|(l, h)| h - l)
        .fold(0.0f64, f64::max)
        .max(1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0u64;
    let mut best: (f64, Vec<f64>) = (f64::NEG_INFINITY, vec![]);

    let evaluate = |coords: &[f64], evaluations: &mut u64| -> Result<f64, VerifyError> {
        let centers = CenterSet::new(dim, coords.to_vec())?;
        let cost_p = cost(p, &centers, params)?;
        let cost_s = if s.is_empty() {
            0.0
        } else {
            cost(s, &centers, params)?
        };
        *evaluations += 1;
        Ok(relative_error(cost_p, cost_s))
    };

    // Plain evaluation of every caller start first, so their gaps are always
    // captured even if refinement of an early start eats the budget.
    for st in starts {
        if evaluations >= budget {
            break;
        }
        let v = evaluate(st.coords(), &mut evaluations)?;
        if v > best.0 {
            best = (v, st.coords().to_vec());
        }
    }

    let mut start_index = 0usize;
    while evaluations < budget {
        let coords = if start_index < starts.len() {
            starts[start_index].coords().to_vec()
        } else {
            random_start(p, s, k, dim, &bbox_lo, &bbox_hi, &mut rng)
        };
        start_index += 1;

        // Hill-climb the relative error from this start.
        let mut cur = coords;
        let mut cur_val = evaluate(&cur, &mut evaluations)?;
        let mut step = INITIAL_STEP_FRACTION * max_span;
        'refine: while step > MIN_STEP_FRACTION * max_span {
            let mut improved = false;
            for i in 0..cur.len() {
                for dir in [1.0, -1.0] {
                    if evaluations >= budget {
                        break 'refine;
                    }
                    let saved = cur[i];
                    cur[i] = saved + dir * step;
                    let v = evaluate(&cur, &mut evaluations)?;
                    if v > cur_val {
                        cur_val = v;
                        improved = true;
                    } else {
                        cur[i] = saved;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if cur_val > best.0 {
            best = (cur_val, cur);
        }
    }

    Ok(AuditReport {
        max_rel_error: best.0,
        witness_centers: CenterSet::new(dim, best.1)?,
        method: AuditMethod::Stochastic,
        evaluations,
        seed: Some(seed),
    })
}

fn bounding_box(p: &WeightedPointSet, s: &WeightedPointSet) -> (Vec<f64>, Vec<f64>) {
    let dim = p.dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for (pt, _) in p.iter().chain(s.iter()) {
        for d in 0..dim {
            lo[d] = lo[d].min(pt[d]);
            hi[d] = hi[d].max(pt[d]);
        }
    }
    for d in 0..dim {
        if !lo[d].is_finite() {
            lo[d] = 0.0;
            hi[d] = 0.0;
        }
    }
    (lo, hi)
}

fn random_start(
    p: &WeightedPointSet,
    s: &WeightedPointSet,
    k: usize,
    dim: usize,
    bbox_lo: &[f64],
    bbox_hi: &[f64],
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let mut coords = Vec::with_capacity(k * dim);
    match rng.gen_range(0..3u32) {
        // k points drawn from the reference set.
        0 => {
            for _ in 0..k {
                let i = rng.gen_range(0..p.len());
                coords.extend_from_slice(p.point(i));
            }
        }
        // k points drawn from the summary (reference if it is empty).
        1 => {
            let src = if s.is_empty() { p } else { s };
            for _ in 0..k {
                let i = rng.gen_range(0..src.len());
                coords.extend_from_slice(src.point(i));
            }
        }
        // Uniform draw from the joint bounding box.
        _ => {
            for _ in 0..k {
                for d in 0..dim {
                    let (l, h) = (bbox_lo[d], bbox_hi[d]);
                    coords.push(if l < h { rng.gen_range(l..=h) } else { l });
                }
            }
        }
    }
    coords
}
