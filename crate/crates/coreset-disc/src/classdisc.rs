//! Direct signed-cost probing of a sign assignment.
//!
//! The class discrepancy of a coloring is the largest signed average cost
//! `(1/m)·|Σ_p σ_p ‖p − c‖^z|` over centers `c` in a ball.
//! [`signed_cost_at`] evaluates the signed average at one center, and
//! [`class_discrepancy_estimate`] maximizes its magnitude over the ball by
//! seeded uniform sampling followed by projected gradient ascent from the
//! best candidates. The estimate is a certified lower bound — the true
//! discrepancy can only be larger.

use coreset_core::{dist, dist_pow, CostParams, KahanSum, WeightedPointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::DiscError;

/// Sampled candidates carried into the ascent phase.
const ASCENT_STARTS: usize = 3;

/// Ascent iterations per start.
const MAX_ITERATIONS: usize = 40;

/// Signed average cost `(1/m)·Σ_p σ_p ‖p − c‖^z` at one center.
///
/// The average is per point, not per unit weight: the signed-cost yardstick
/// counts multiset members, so stored weights do not enter.
pub fn signed_cost_at(
    points: &WeightedPointSet,
    sigma: &[i8],
    center: &[f64],
    params: CostParams,
) -> Result<f64, DiscError> {
    if points.is_empty() {
        return Err(DiscError::Empty);
    }
    if sigma.len() != points.len() {
        return Err(DiscError::LengthMismatch {
            points: points.len(),
            signs: sigma.len(),
        });
    }
    for (index, &value) in sigma.iter().enumerate() {
        if value != 1 && value != -1 {
            return Err(DiscError::BadSign { index, value });
        }
    }
    if center.len() != points.dim() {
        return Err(DiscError::DimensionMismatch {
            expected: points.dim(),
            got: center.len(),
        });
    }
    Ok(signed_average(points, sigma, center, params))
}

/// Seeded lower-bound estimate of the class discrepancy
/// `max_{‖c‖ ≤ r} (1/m)·|Σ_p σ_p ‖p − c‖^z|`.
///
/// Candidate centers are the origin plus `samples` points drawn uniformly
/// from the radius-`r` ball; the best few seed projected gradient ascent
/// that stays inside the ball. The radius must be at least 1 — smaller
/// balls reduce to this case through the `(4r)^z` rescaling identity.
pub fn class_discrepancy_estimate(
    points: &WeightedPointSet,
    sigma: &[i8],
    r: f64,
    z: f64,
    samples: usize,
    seed: u64,
) -> Result<f64, DiscError> {
    let params = CostParams::new(z)?;
    if !(r >= 1.0) || !r.is_finite() {
        return Err(DiscError::BadRadius { r });
    }
    let d = points.dim();
    let origin = vec![0.0; d];
    // Validates the points, signs, and dimensions once; later evaluations
    // reuse the unchecked core.
    let at_origin = signed_cost_at(points, sigma, &origin, params)?;

    let mut candidates: Vec<(f64, Vec<f64>)> = vec![(at_origin.abs(), origin)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let c = ball_point(d, r, &mut rng);
        let value = signed_average(points, sigma, &c, params).abs();
        keep_best(&mut candidates, value, c);
    }

    let mut best = 0.0f64;
    for (value, start) in candidates {
        best = best.max(value);
        best = best.max(ascend(points, sigma, params, r, start));
    }
    Ok(best)
}

fn signed_average(
    points: &WeightedPointSet,
    sigma: &[i8],
    center: &[f64],
    params: CostParams,
) -> f64 {
    let mut acc = KahanSum::new();
    for (i, (p, _)) in points.iter().enumerate() {
        acc.add(f64::from(sigma[i]) * dist_pow(dist(p, center), params.z()));
    }
    acc.value() / points.len() as f64
}

/// Keeps the running top-[`ASCENT_STARTS`] candidates by magnitude.
fn keep_best(candidates: &mut Vec<(f64, Vec<f64>)>, value: f64, center: Vec<f64>) {
    candidates.push((value, center));
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(ASCENT_STARTS);
}

/// Uniform draw from the radius-`r` ball: Gaussian direction, radius
/// `r·u^{1/d}`.
fn ball_point(d: usize, r: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            let u: f64 = rng.gen_range(0.0..1.0);
            let radius = r * u.powf(1.0 / d as f64);
            return g.into_iter().map(|x| x * radius / n).collect();
        }
    }
}

/// Maximizes `|signed average|` inside the ball by gradient ascent with an
/// adaptive step, projecting back onto the ball after every move.
fn ascend(
    points: &WeightedPointSet,
    sigma: &[i8],
    params: CostParams,
    r: f64,
    mut c: Vec<f64>,
) -> f64 {
    let z = params.z();
    let m = points.len() as f64;
    let mut value = signed_average(points, sigma, &c, params);
    let mut step = 0.25 * r;
    for _ in 0..MAX_ITERATIONS {
        if step < 1e-12 {
            break;
        }
        // ∇_c of the signed average is Σ σ_p · z·‖p−c‖^{z−2}·(c − p) / m;
        // points at the center are skipped (the term is non-smooth there).
        let mut grad = vec![0.0f64; c.len()];
        for (i, (p, _)) in points.iter().enumerate() {
            let dpc = dist(p, &c);
            if dpc < 1e-12 {
                continue;
            }
            let coeff = f64::from(sigma[i]) * z * dist_pow(dpc, z - 2.0) / m;
            for ((g, &cc), &pp) in grad.iter_mut().zip(&c).zip(p) {
                *g += coeff * (cc - pp);
            }
        }
        let orientation = if value >= 0.0 { 1.0 } else { -1.0 };
        let mut candidate: Vec<f64> = c
            .iter()
            .zip(&grad)
            .map(|(x, g)| x + step * orientation * g)
            .collect();
        let cn = candidate.iter().map(|x| x * x).sum::<f64>().sqrt();
        if cn > r {
            for x in &mut candidate {
                *x *= r / cn;
            }
        }
        let candidate_value = signed_average(points, sigma, &candidate, params);
        if candidate_value.abs() > value.abs() {
            c = candidate;
            value = candidate_value;
            step *= 1.2;
        } else {
            step *= 0.5;
        }
    }
    value.abs()
}
