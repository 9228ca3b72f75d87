//! Iterative halving of a weighted set into a mixed-error summary.
//!
//! One round lifts the surviving points, colors them with [`color`], keeps
//! a single sign class, and rescales the survivors' weights by the count
//! ratio. Every cost query moves by at most the coloring's achieved
//! discrepancy per round, so halving until the target size yields a subset
//! whose cost deviation is a sum of small per-round terms. The final subset
//! is audited empirically: centers are sampled on spheres across a
//! geometric ladder of radii and the worst deviation is reported relative
//! to the scale-aware budget `ε · max(1, ‖c‖)^z · W`.

use coreset_core::{CostParams, WeightedPointSet};
use coreset_verify::check_mixed_coreset;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coloring::{color, random_balanced_signs, SignColoring, DEFAULT_ORDER_CAP};
use crate::lift::{lift_phi, norm, LiftedPoint};
use crate::DiscError;

/// Default `c` in the halving target `⌈c·√d/ε⌉`.
pub const DEFAULT_HALVING_CONSTANT: f64 = 8.0;

/// Random balanced colorings drawn per round as the chance baseline.
const RANDOM_BASELINE_COLORINGS: usize = 32;

/// Sphere-sampled centers spent on the final audit.
const VIOLATION_SAMPLES: usize = 10_000;

/// Ball-membership slack, matching the audit's own tolerance.
const UNIT_BALL_SLACK: f64 = 1e-12;

/// Per-round record of a halving run: the size entering the round, the
/// order-1 discrepancy of the chosen coloring, and the median order-1 norm
/// of [`RANDOM_BASELINE_COLORINGS`] random balanced colorings of the same
/// lifted points.
#[derive(Debug, Clone)]
pub struct HalvingRound {
    size_before: usize,
    order1_norm: f64,
    random_median_order1: f64,
}

impl HalvingRound {
    /// Number of points entering this round.
    pub fn size_before(&self) -> usize {
        self.size_before
    }

    /// Exact order-1 signed-sum norm of the coloring used in this round.
    pub fn order1_norm(&self) -> f64 {
        self.order1_norm
    }

    /// Median exact order-1 norm of the random balanced colorings drawn as
    /// this round's chance baseline.
    pub fn random_median_order1(&self) -> f64 {
        self.random_median_order1
    }
}

/// A halved subset together with the parameters it was built for and the
/// audit verdict it earned.
#[derive(Debug, Clone)]
pub struct MixedCoreset {
    subset: WeightedPointSet,
    eps: f64,
    z: f64,
    rounds: usize,
    empirical_violation: f64,
    round_log: Vec<HalvingRound>,
}

impl MixedCoreset {
    /// Surviving points; weights are the originals scaled by the per-round
    /// count ratios (a clean `2^rounds` when every round had even size).
    pub fn subset(&self) -> &WeightedPointSet {
        &self.subset
    }

    /// Accuracy target the subset was built for.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Distance exponent of the audited cost.
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Number of halving rounds applied.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Worst audit ratio over all sampled centers: deviation divided by the
    /// budget `ε · max(1, ‖c‖)^z · W`. At most 1 means every sampled query
    /// stayed within budget; 0 when no halving was needed, since the subset
    /// then is the input and deviates nowhere.
    pub fn empirical_violation(&self) -> f64 {
        self.empirical_violation
    }

    /// One entry per halving round, oldest first.
    pub fn round_log(&self) -> &[HalvingRound] {
        &self.round_log
    }
}

/// The geometric ladder of query radii the final audit samples: half-power
/// steps of two from 2⁻⁴ through 2⁶.
pub fn default_query_radii() -> Vec<f64> {
    (0..=20).map(|i| 2.0f64.powf(-4.0 + 0.5 * i as f64)).collect()
}

/// Keeps one class of a balanced coloring and rescales the survivors'
/// weights by the count ratio `n / |kept|`.
///
/// The kept class is the one of size `⌊n/2⌋` — for even `n` the tie goes to
/// the +1 class and the rescale is exactly 2, so uniform-weight totals are
/// preserved; for odd `n` the smaller class survives with the matching
/// rescale. Surviving coordinates are copied bit-for-bit.
pub fn halve(
    points: &WeightedPointSet,
    coloring: &SignColoring,
) -> Result<WeightedPointSet, DiscError> {
    let n = points.len();
    if n == 0 {
        return Err(DiscError::Empty);
    }
    if n == 1 {
        return Err(DiscError::CannotHalve);
    }
    let signs = coloring.signs();
    if signs.len() != n {
        return Err(DiscError::LengthMismatch {
            points: n,
            signs: signs.len(),
        });
    }
    let plus = signs.iter().filter(|&&s| s == 1).count();
    let minus = n - plus;
    if plus.abs_diff(minus) > 1 {
        return Err(DiscError::Unbalanced { plus, minus });
    }
    let kept_sign: i8 = if plus <= minus { 1 } else { -1 };
    let kept_count = plus.min(minus);
    let factor = n as f64 / kept_count as f64;

    let mut coords = Vec::with_capacity(kept_count * points.dim());
    let mut weights = Vec::with_capacity(kept_count);
    for (i, (point, weight)) in points.iter().enumerate() {
        if signs[i] == kept_sign {
            coords.extend_from_slice(point);
            weights.push(weight * factor);
        }
    }
    Ok(WeightedPointSet::new(points.dim(), coords, weights)?)
}

/// [`mixed_coreset_with_constant`] with the default size constant.
pub fn mixed_coreset(
    points: &WeightedPointSet,
    eps: f64,
    z: f64,
    seed: u64,
) -> Result<MixedCoreset, DiscError> {
    mixed_coreset_with_constant(points, eps, z, seed, DEFAULT_HALVING_CONSTANT)
}

/// Repeatedly colors and halves the set until at most `⌈c·√d/ε⌉` points
/// survive, then audits the survivors against the input.
///
/// Each round is colored with a seed derived from `seed` and the round
/// index, so the whole construction is reproducible. Points must lie in the
/// closed unit ball. A set already at or below the target is returned
/// unchanged with a violation of exactly 0 — no sampling is spent on a
/// subset that cannot deviate.
pub fn mixed_coreset_with_constant(
    points: &WeightedPointSet,
    eps: f64,
    z: f64,
    seed: u64,
    size_constant: f64,
) -> Result<MixedCoreset, DiscError> {
    let params = CostParams::new(z)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(DiscError::BadAccuracy { eps });
    }
    if !(size_constant > 0.0 && size_constant.is_finite()) {
        return Err(DiscError::BadSizeConstant { c: size_constant });
    }
    if points.is_empty() {
        return Err(DiscError::Empty);
    }
    for i in 0..points.len() {
        let point_norm = norm(points.point(i));
        if point_norm > 1.0 + UNIT_BALL_SLACK {
            return Err(DiscError::NotInUnitBall {
                index: i,
                norm: point_norm,
            });
        }
    }

    let target = ((size_constant * (points.dim() as f64).sqrt() / eps).ceil() as usize).max(1);
    let mut subset = points.clone();
    let mut rounds = 0usize;
    let mut round_log = Vec::new();
    while subset.len() > target {
        let round_seed = seed.wrapping_add((rounds as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let lifted: Vec<LiftedPoint> = (0..subset.len())
            .map(|i| lift_phi(subset.point(i)))
            .collect::<Result<_, _>>()?;
        let coloring = color(&lifted, DEFAULT_ORDER_CAP, round_seed)?;
        round_log.push(HalvingRound {
            size_before: subset.len(),
            order1_norm: coloring.achieved_norm(1).unwrap_or(0.0),
            random_median_order1: random_order1_median(&lifted, round_seed ^ 0xA5A5_A5A5_A5A5_A5A5),
        });
        subset = halve(&subset, &coloring)?;
        rounds += 1;
    }

    let empirical_violation = if rounds == 0 {
        0.0
    } else {
        check_mixed_coreset(
            points,
            &subset,
            eps,
            params,
            &default_query_radii(),
            VIOLATION_SAMPLES,
            seed,
        )?
        .worst_ratio
    };
    Ok(MixedCoreset {
        subset,
        eps,
        z,
        rounds,
        empirical_violation,
        round_log,
    })
}

/// Median exact order-1 norm over seeded random balanced colorings of the
/// lifted points — the chance baseline a searched coloring should beat.
fn random_order1_median(lifted: &[LiftedPoint], seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut norms: Vec<f64> = (0..RANDOM_BASELINE_COLORINGS)
        .map(|_| {
            let signs = random_balanced_signs(lifted.len(), &mut rng);
            signed_sum_norm(lifted, &signs)
        })
        .collect();
    norms.sort_by(|a, b| a.total_cmp(b));
    let mid = norms.len() / 2;
    if norms.len() % 2 == 0 {
        0.5 * (norms[mid - 1] + norms[mid])
    } else {
        norms[mid]
    }
}

fn signed_sum_norm(lifted: &[LiftedPoint], signs: &[i8]) -> f64 {
    let mut sum = vec![0.0f64; lifted[0].lifted_dim()];
    for (p, &s) in lifted.iter().zip(signs) {
        for (acc, &x) in sum.iter_mut().zip(p.lifted()) {
            *acc += f64::from(s) * x;
        }
    }
    norm(&sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn ball_points(n: usize, d: usize, seed: u64) -> WeightedPointSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coords = Vec::with_capacity(n * d);
        while coords.len() < n * d {
            let p: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if p.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
                coords.extend(p);
            }
        }
        WeightedPointSet::unit_weights(d, coords).unwrap()
    }

    fn lift_set(points: &WeightedPointSet) -> Vec<LiftedPoint> {
        (0..points.len())
            .map(|i| lift_phi(points.point(i)).unwrap())
            .collect()
    }

    #[test]
    fn identical_pair_halves_to_one_point_with_doubled_weight() {
        let points = WeightedPointSet::unit_weights(2, vec![0.3, -0.1, 0.3, -0.1]).unwrap();
        let coloring = color(&lift_set(&points), 3, 5).unwrap();
        let halved = halve(&points, &coloring).unwrap();
        assert_eq!(halved.len(), 1);
        assert_eq!(halved.weight(0), 2.0);
        assert_eq!(halved.point(0), points.point(0));
    }

    #[test]
    fn uniform_total_weight_survives_halving() {
        for &n in &[2usize, 9, 16, 63, 128] {
            let points = {
                let base = ball_points(n, 3, n as u64);
                let coords = base.coords().to_vec();
                WeightedPointSet::new(3, coords, vec![0.37; n]).unwrap()
            };
            let coloring = color(&lift_set(&points), 3, 11).unwrap();
            let halved = halve(&points, &coloring).unwrap();
            assert_eq!(halved.len(), n / 2);
            let before = points.total_weight();
            let after = halved.total_weight();
            assert!(
                (before - after).abs() <= 1e-12 * before,
                "n={n}: total weight {before} became {after}"
            );
        }
    }

    #[test]
    fn even_ties_keep_the_plus_class() {
        let points = WeightedPointSet::unit_weights(1, vec![0.1, 0.2]).unwrap();
        let coloring = SignColoring::from_signs(vec![-1, 1]).unwrap();
        let halved = halve(&points, &coloring).unwrap();
        assert_eq!(halved.point(0), &[0.2]);
        assert_eq!(halved.weight(0), 2.0);
    }

    #[test]
    fn odd_sets_keep_the_smaller_class_and_rescale() {
        let points = WeightedPointSet::unit_weights(1, vec![0.1, 0.2, 0.3]).unwrap();
        let coloring = SignColoring::from_signs(vec![1, 1, -1]).unwrap();
        let halved = halve(&points, &coloring).unwrap();
        assert_eq!(halved.len(), 1);
        assert_eq!(halved.point(0), &[0.3]);
        assert_eq!(halved.weight(0), 3.0);
        assert!((halved.total_weight() - points.total_weight()).abs() <= 1e-12 * 3.0);
    }

    #[test]
    fn degenerate_sets_cannot_be_halved() {
        let empty = WeightedPointSet::new(2, vec![], vec![]).unwrap();
        let no_signs = SignColoring::from_signs(vec![]).unwrap();
        assert!(matches!(halve(&empty, &no_signs), Err(DiscError::Empty)));

        let single = WeightedPointSet::unit_weights(2, vec![0.1, 0.2]).unwrap();
        let one_sign = SignColoring::from_signs(vec![1]).unwrap();
        assert!(matches!(
            halve(&single, &one_sign),
            Err(DiscError::CannotHalve)
        ));

        let pair = WeightedPointSet::unit_weights(1, vec![0.1, 0.2]).unwrap();
        let three_signs = SignColoring::from_signs(vec![1, -1, 1]).unwrap();
        assert!(matches!(
            halve(&pair, &three_signs),
            Err(DiscError::LengthMismatch {
                points: 2,
                signs: 3
            })
        ));
    }

    #[test]
    fn small_sets_come_back_unchanged() {
        let points = ball_points(10, 2, 3);
        let result = mixed_coreset(&points, 0.1, 1.0, 7).unwrap();
        assert_eq!(result.rounds(), 0);
        assert_eq!(result.empirical_violation(), 0.0);
        assert!(result.round_log().is_empty());
        assert_eq!(result.subset().coords(), points.coords());
        assert_eq!(result.subset().weights(), points.weights());
        assert_eq!(result.eps(), 0.1);
        assert_eq!(result.z(), 1.0);
    }

    #[test]
    fn halving_reaches_the_target_and_stays_within_budget() {
        let points = ball_points(256, 2, 12);
        let result = mixed_coreset(&points, 0.1, 1.0, 21).unwrap();
        // target ⌈8·√2/0.1⌉ = 114: two halvings land at 64.
        assert_eq!(result.rounds(), 2);
        assert_eq!(result.subset().len(), 64);
        assert!(result.subset().len() <= 114);
        for w in result.subset().weights() {
            assert_eq!(*w, 4.0);
        }
        assert!(
            result.empirical_violation() <= 1.0,
            "violation {}",
            result.empirical_violation()
        );
        assert_eq!(result.round_log().len(), 2);
        assert_eq!(result.round_log()[0].size_before(), 256);
        assert_eq!(result.round_log()[1].size_before(), 128);
        for round in result.round_log() {
            assert!(
                round.order1_norm() <= round.random_median_order1(),
                "round at size {} lost to chance: {} vs {}",
                round.size_before(),
                round.order1_norm(),
                round.random_median_order1()
            );
        }
    }

    #[test]
    fn survivors_are_original_points_with_positive_weights() {
        let points = ball_points(64, 3, 9);
        let result = mixed_coreset(&points, 0.3, 2.0, 5).unwrap();
        assert!(result.rounds() > 0);
        for i in 0..result.subset().len() {
            let survivor = result.subset().point(i);
            assert!(result.subset().weight(i) > 0.0);
            let found = (0..points.len()).any(|j| {
                points
                    .point(j)
                    .iter()
                    .zip(survivor)
                    .all(|(a, b)| a.to_bits() == b.to_bits())
            });
            assert!(found, "survivor {i} is not an input point");
        }
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let points = ball_points(8, 2, 1);
        assert!(matches!(
            mixed_coreset(&points, 0.0, 1.0, 0),
            Err(DiscError::BadAccuracy { .. })
        ));
        assert!(matches!(
            mixed_coreset(&points, 1.0, 1.0, 0),
            Err(DiscError::BadAccuracy { .. })
        ));
        assert!(matches!(
            mixed_coreset(&points, 0.1, 0.5, 0),
            Err(DiscError::Core(_))
        ));
        assert!(matches!(
            mixed_coreset_with_constant(&points, 0.1, 1.0, 0, 0.0),
            Err(DiscError::BadSizeConstant { .. })
        ));
        let empty = WeightedPointSet::new(2, vec![], vec![]).unwrap();
        assert!(matches!(
            mixed_coreset(&empty, 0.1, 1.0, 0),
            Err(DiscError::Empty)
        ));
        let outside = WeightedPointSet::unit_weights(2, vec![1.2, 0.0]).unwrap();
        assert!(matches!(
            mixed_coreset(&outside, 0.1, 1.0, 0),
            Err(DiscError::NotInUnitBall { index: 0, .. })
        ));
    }

    #[test]
    fn query_radius_ladder_spans_the_documented_range() {
        let radii = default_query_radii();
        assert_eq!(radii.len(), 21);
        assert_eq!(radii[0], 2.0f64.powi(-4));
        assert_eq!(radii[20], 64.0);
        for pair in radii.windows(2) {
            assert!((pair[1] / pair[0] - f64::sqrt(2.0)).abs() < 1e-12);
        }
    }
}
