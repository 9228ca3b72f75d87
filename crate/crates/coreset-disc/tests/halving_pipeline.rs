//! End-to-end halving behavior: the weighted mean drifts by no more than
//! the per-round discrepancy budget, and a realistic full run hits its size
//! target, beats the chance baseline every round, and stays inside the
//! audit budget.

use coreset_core::WeightedPointSet;
use coreset_disc::{color, halve, lift_phi, mixed_coreset, LiftedPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

fn weighted_raw_sum(points: &WeightedPointSet) -> Vec<f64> {
    let mut sum = vec![0.0f64; points.dim()];
    for (p, w) in points.iter() {
        for (acc, &x) in sum.iter_mut().zip(p) {
            *acc += w * x;
        }
    }
    sum
}

#[test]
fn weighted_mean_drift_stays_inside_the_per_round_discrepancy_budget() {
    // 1024 points halved down to 16. Every round the kept class carries the
    // uniform per-point weight of that round, so the drift of Σ w·p equals
    // the weight times the signed raw-coordinate sum — and the raw block of
    // the lifted vectors is scaled by √2/2, so that signed sum is at most
    // √2 times the recorded order-1 norm.
    let mut current = ball_points(1024, 3, 42);
    let mut weight_scale = 1.0f64;
    let mut round = 0u64;
    while current.len() > 16 {
        let lifted = lift_set(&current);
        let coloring = color(&lifted, 3, 1000 + round).unwrap();
        let order1 = coloring.achieved_norm(1).unwrap();

        let before = weighted_raw_sum(&current);
        let next = halve(&current, &coloring).unwrap();
        let after = weighted_raw_sum(&next);
        let drift: f64 = before
            .iter()
            .zip(&after)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let budget = weight_scale * f64::sqrt(2.0) * order1 + 1e-9;
        assert!(
            drift <= budget,
            "round {round} (size {}): drift {drift} above budget {budget}",
            current.len()
        );

        current = next;
        weight_scale *= 2.0;
        round += 1;
    }
    assert_eq!(current.len(), 16);
    assert_eq!(current.weight(0), 64.0);
    assert!((current.total_weight() - 1024.0).abs() <= 1e-9 * 1024.0);
}

#[test]
fn long_halving_run_meets_the_size_and_budget_contract() {
    // 4096 points in dimension 4 at ε = 0.1 and z = 1: the target is
    // ⌈8·2/0.1⌉ = 160, reached after five even halvings at 128 survivors.
    let points = ball_points(4096, 4, 7);
    let result = mixed_coreset(&points, 0.1, 1.0, 99).unwrap();

    assert_eq!(result.rounds(), 5);
    assert_eq!(result.subset().len(), 128);
    assert!(result.subset().len() <= 160);
    for w in result.subset().weights() {
        assert_eq!(*w, 32.0);
    }
    assert!((result.subset().total_weight() - 4096.0).abs() <= 1e-9 * 4096.0);
    assert!(
        result.empirical_violation() <= 1.0,
        "audit violation {}",
        result.empirical_violation()
    );

    let sizes: Vec<usize> = result.round_log().iter().map(|r| r.size_before()).collect();
    assert_eq!(sizes, vec![4096, 2048, 1024, 512, 256]);
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
fn identical_seeds_reproduce_the_subset_bit_for_bit() {
    let points = ball_points(256, 2, 5);
    let a = mixed_coreset(&points, 0.1, 2.0, 31).unwrap();
    let b = mixed_coreset(&points, 0.1, 2.0, 31).unwrap();
    assert_eq!(a.subset().coords(), b.subset().coords());
    assert_eq!(a.subset().weights(), b.subset().weights());
    assert_eq!(a.empirical_violation().to_bits(), b.empirical_violation().to_bits());
}
