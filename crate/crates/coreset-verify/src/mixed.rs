use coreset_core::{cost, dist_pow, CostParams, WeightedPointSet};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::VerifyError;

/// Worst-case summary of a scaled-family check: for each query radius the
/// centers are sampled uniformly on the sphere of that radius and the cost
/// deviation is normalized by `ε · max(1, r)^z · W`, the error budget a
/// scale-aware summary must meet simultaneously at every radius.
#[derive(Debug, Clone)]
pub struct MixedCheckReport {
    /// Largest normalized deviation over all sampled centers.
    pub worst_ratio: f64,
    /// The center attaining `worst_ratio`.
    pub worst_center: Vec<f64>,
    /// The radius family of `worst_center`.
    pub worst_radius: f64,
    /// `(radius, worst normalized deviation at that radius)` per family.
    pub per_radius: Vec<(f64, f64)>,
    /// Total number of sampled centers.
    pub evaluations: u64,
    /// Seed of the sampler.
    pub seed: u64,
}

impl MixedCheckReport {
    /// Serializes the report as a JSON object with stable field names.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "worst_ratio": self.worst_ratio,
            "worst_center": self.worst_center,
            "worst_radius": self.worst_radius,
            "per_radius": self.per_radius,
            "evaluations": self.evaluations,
            "seed": self.seed,
        })
    }
}

/// Samples centers on spheres of the given radii and reports the worst
/// deviation of the summary's cost from the reference's, normalized by the
/// scale-aware budget `ε · max(1, ‖c‖)^z · W` where `W` is the reference's
/// total weight.
///
/// The reference must lie in the unit ball (that is what makes the single
/// normalization sound across all radii); a ratio ≤ 1 everywhere means the
/// summary kept every sampled query within its error budget.
pub fn check_mixed_coreset(
    p: &WeightedPointSet,
    s: &WeightedPointSet,
    eps: f64,
    params: CostParams,
    radii: &[f64],
    samples: usize,
    seed: u64,
) -> Result<MixedCheckReport, VerifyError> {
    if p.is_empty() || p.total_weight() <= 0.0 {
        return Err(VerifyError::EmptyReference);
    }
    if !s.is_empty() && s.dim() != p.dim() {
        return Err(VerifyError::DimensionMismatch {
            reference: p.dim(),
            summary: s.dim(),
        });
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(VerifyError::BadEps { eps });
    }
    if radii.is_empty() {
        return Err(VerifyError::NoRadii);
    }
    for &r in radii {
        if !r.is_finite() || r <= 0.0 {
            return Err(VerifyError::BadRadius { r });
        }
    }
    if samples == 0 {
        return Err(VerifyError::ZeroBudget);
    }
    for (i, (pt, _)) in p.iter().enumerate() {
        let norm = pt.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(VerifyError::NotInUnitBall { index: i, norm });
        }
    }

    let dim = p.dim();
    let w_p = p.total_weight();
    let per_radius_samples = (samples / radii.len()).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = (f64::NEG_INFINITY, vec![0.0; dim], radii[0]);
    let mut per_radius = Vec::with_capacity(radii.len());
    let mut evaluations = 0u64;
    for &r in radii {
        let denom = eps * dist_pow(r.max(1.0), params.z()) * w_p;
        let mut radius_worst = f64::NEG_INFINITY;
        for _ in 0..per_radius_samples {
            let c = sphere_point(dim, r, &mut rng);
            let centers = coreset_core::CenterSet::new(dim, c.clone())?;
            let cost_p = cost(p, &centers, params)?;
            let cost_s = if s.is_empty() {
                0.0
            } else {
                cost(s, &centers, params)?
            };
            let ratio = (cost_p - cost_s).abs() / denom;
            evaluations += 1;
            if ratio > radius_worst {
                radius_worst = ratio;
            }
            if ratio > worst.0 {
                worst = (ratio, c, r);
            }
        }
        per_radius.push((r, radius_worst));
    }

    Ok(MixedCheckReport {
        worst_ratio: worst.0,
        worst_center: worst.1,
        worst_radius: worst.2,
        per_radius,
        evaluations,
        seed,
    })
}

/// Uniform point on the sphere of radius `r`: a normalized Gaussian draw,
/// re-drawn in the (measure-zero) case of a vanishing direction.
fn sphere_point(dim: usize, r: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x * r / norm).collect();
        }
    }
}
