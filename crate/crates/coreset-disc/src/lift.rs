//! The quadratic lifting that turns distance powers into inner products.
//!
//! A point `p` in the unit ball maps to `φ(p) = (½‖p‖², (√2/2)·p, ½)` and a
//! center `c′` in the quarter ball maps, for a scale `r ≥ 1`, to
//! `ψ(c′) = (1/(8r²), −(√2/(2r))·c′, 2‖c′‖²)`. Expanding the inner product
//! gives `⟨φ(p), ψ(c′)⟩ = ‖p/(4r) − c′‖²` exactly, so any power of a
//! distance between a rescaled point and a shrunken center is a power of one
//! inner product against a fixed vector — the form the sign-coloring stage
//! knows how to balance. Both images are short: `‖φ(p)‖ ≤ 1` and
//! `‖ψ(c′)‖ ≤ 1/3`.

use crate::DiscError;

/// Largest center norm accepted by [`lift_psi`]; centers within distance
/// `r` of the origin land inside this ball after the `1/(4r)` shrink.
pub const CENTER_NORM_LIMIT: f64 = 0.25;

/// Slack applied to the ball-membership checks so points sitting on a
/// boundary up to rounding are not rejected.
const BOUNDARY_SLACK: f64 = 1e-9;

/// A unit-ball point together with its lifted image.
///
/// The raw coordinates are stored alongside the lifted ones because the
/// lifting multiplies by `√2/2`, which is not exactly invertible in floating
/// point; keeping the original bits makes reconstruction a slice copy rather
/// than an arithmetic round trip.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedPoint {
    raw: Vec<f64>,
    lifted: Vec<f64>,
}

impl LiftedPoint {
    /// Original coordinates, bit-for-bit as passed to [`lift_phi`].
    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    /// Lifted coordinates `(½‖p‖², (√2/2)·p, ½)`.
    pub fn lifted(&self) -> &[f64] {
        &self.lifted
    }

    /// Ambient dimension of the raw point.
    pub fn dim(&self) -> usize {
        self.raw.len()
    }

    /// Dimension of the lifted image, always `dim() + 2`.
    pub fn lifted_dim(&self) -> usize {
        self.lifted.len()
    }

    /// Euclidean norm of the lifted image, `(‖p‖² + 1)/2`.
    pub fn lifted_norm(&self) -> f64 {
        norm(&self.lifted)
    }
}

pub(crate) fn norm(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Lifts a unit-ball point to `φ(p) = (½‖p‖², (√2/2)·p, ½)`.
///
/// The image has norm `(‖p‖² + 1)/2`, hence lies in `[1/2, 1]`.
pub fn lift_phi(p: &[f64]) -> Result<LiftedPoint, DiscError> {
    let n = norm(p);
    if !(n <= 1.0 + BOUNDARY_SLACK) {
        return Err(DiscError::NotInUnitBall { index: 0, norm: n });
    }
    let mut lifted = Vec::with_capacity(p.len() + 2);
    lifted.push(0.5 * n * n);
    let half_sqrt2 = 0.5 * f64::sqrt(2.0);
    lifted.extend(p.iter().map(|x| half_sqrt2 * x));
    lifted.push(0.5);
    Ok(LiftedPoint {
        raw: p.to_vec(),
        lifted,
    })
}

/// Lifts a quarter-ball center to `ψ(c′) = (1/(8r²), −(√2/(2r))·c′, 2‖c′‖²)`
/// for a scale `r ≥ 1`.
///
/// For every unit-ball `p`, `⟨φ(p), ψ(c′)⟩ = ‖p/(4r) − c′‖²` exactly, and
/// `‖ψ(c′)‖ ≤ 1/3` whenever `‖c′‖ ≤ 1/4`.
pub fn lift_psi(c_prime: &[f64], r: f64) -> Result<Vec<f64>, DiscError> {
    if !(r >= 1.0) {
        return Err(DiscError::BadRadius { r });
    }
    let n = norm(c_prime);
    if !(n <= CENTER_NORM_LIMIT + BOUNDARY_SLACK) {
        return Err(DiscError::CenterOutOfRange {
            norm: n,
            limit: CENTER_NORM_LIMIT,
        });
    }
    let mut lifted = Vec::with_capacity(c_prime.len() + 2);
    lifted.push(1.0 / (8.0 * r * r));
    let scale = -f64::sqrt(2.0) / (2.0 * r);
    lifted.extend(c_prime.iter().map(|x| scale * x));
    lifted.push(2.0 * n * n);
    Ok(lifted)
}
