//! Lower-bound estimates of signed moment-tensor norms.
//!
//! The norm being estimated is the symmetric injective one:
//! `max_{‖q‖=1} |Σ_p σ_p ⟨φ(p), q⟩^l|`. Order 1 is just the Euclidean norm
//! of the signed vector sum and is computed exactly. Higher orders are
//! maximized by projected gradient ascent from a mix of informed starts
//! (the normalized signed sum, a few lifted points) and seeded Gaussian
//! probes; the result is a certified lower bound — the objective value at
//! the best unit vector found — never an upper bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::lift::{norm, LiftedPoint};
use crate::DiscError;

/// Lifted points the ascent starts from in addition to the probes.
const POINT_STARTS: usize = 4;

/// Ascent iterations per start.
const MAX_ITERATIONS: usize = 50;

/// Step sizes below this are treated as converged.
const MIN_STEP: f64 = 1e-12;

/// Estimates `max_{‖q‖=1} |Σ_p σ_p ⟨φ(p), q⟩^l|` for the given signs.
///
/// Order `l = 1` is returned exactly as the norm of the signed vector sum.
/// For higher orders the returned value is the best objective found by
/// seeded projected gradient ascent over `probes` random starts plus a few
/// informed ones — a reproducible lower bound on the true norm.
pub fn tensor_disc_estimate(
    points: &[LiftedPoint],
    signs: &[i8],
    l: usize,
    probes: usize,
    seed: u64,
) -> Result<f64, DiscError> {
    if points.is_empty() {
        return Err(DiscError::Empty);
    }
    if l == 0 {
        return Err(DiscError::ZeroOrder);
    }
    if signs.len() != points.len() {
        return Err(DiscError::LengthMismatch {
            points: points.len(),
            signs: signs.len(),
        });
    }
    for (index, &value) in signs.iter().enumerate() {
        if value != 1 && value != -1 {
            return Err(DiscError::BadSign { index, value });
        }
    }
    let d = points[0].dim();
    for p in points {
        if p.dim() != d {
            return Err(DiscError::DimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }

    let m = d + 2;
    let mut signed_sum = vec![0.0f64; m];
    for (p, &s) in points.iter().zip(signs) {
        let sf = f64::from(s);
        for (acc, &x) in signed_sum.iter_mut().zip(p.lifted()) {
            *acc += sf * x;
        }
    }
    if l == 1 {
        return Ok(norm(&signed_sum));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(1 + POINT_STARTS + probes);
    if let Some(unit) = normalized(&signed_sum) {
        starts.push(unit);
    }
    for p in points.iter().take(POINT_STARTS) {
        if let Some(unit) = normalized(p.lifted()) {
            starts.push(unit);
        }
    }
    for _ in 0..probes {
        let gauss: Vec<f64> = (0..m)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        if let Some(unit) = normalized(&gauss) {
            starts.push(unit);
        }
    }
    if starts.is_empty() {
        // Degenerate but possible: all-zero points and no probes.
        let mut axis = vec![0.0; m];
        axis[0] = 1.0;
        starts.push(axis);
    }

    let mut best = 0.0f64;
    for start in starts {
        best = best.max(ascend(points, signs, l, start));
    }
    Ok(best)
}

fn normalized(xs: &[f64]) -> Option<Vec<f64>> {
    let n = norm(xs);
    if n < 1e-300 {
        return None;
    }
    Some(xs.iter().map(|x| x / n).collect())
}

/// Signed objective `H(q) = Σ_p σ_p ⟨φ(p), q⟩^l`.
fn objective(points: &[LiftedPoint], signs: &[i8], l: usize, q: &[f64]) -> f64 {
    points
        .iter()
        .zip(signs)
        .map(|(p, &s)| f64::from(s) * dot(p.lifted(), q).powi(l as i32))
        .sum()
}

/// Maximizes `|H(q)|` over the unit sphere by projected gradient ascent
/// with an adaptive step, starting from the given unit vector.
fn ascend(points: &[LiftedPoint], signs: &[i8], l: usize, mut q: Vec<f64>) -> f64 {
    let m = q.len();
    let mut value = objective(points, signs, l, &q);
    let mut step = 0.5;
    for _ in 0..MAX_ITERATIONS {
        if step < MIN_STEP {
            break;
        }
        // ∇H = l · Σ σ_p ⟨φ_p, q⟩^{l−1} φ_p; move along ±∇H to grow |H|.
        let mut grad = vec![0.0f64; m];
        for (p, &s) in points.iter().zip(signs) {
            let coeff = f64::from(s) * l as f64 * dot(p.lifted(), &q).powi(l as i32 - 1);
            for (g, &x) in grad.iter_mut().zip(p.lifted()) {
                *g += coeff * x;
            }
        }
        let orientation = if value >= 0.0 { 1.0 } else { -1.0 };
        let candidate: Vec<f64> = q
            .iter()
            .zip(&grad)
            .map(|(x, g)| x + step * orientation * g)
            .collect();
        let candidate = match normalized(&candidate) {
            Some(unit) => unit,
            None => break,
        };
        let candidate_value = objective(points, signs, l, &candidate);
        if candidate_value.abs() > value.abs() {
            q = candidate;
            value = candidate_value;
            step *= 1.2;
        } else {
            step *= 0.5;
        }
    }
    value.abs()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
