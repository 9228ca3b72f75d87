//! The single-center audit against an independent dense-grid oracle.
//!
//! The oracle sweeps a fine grid with running partial sums — a different
//! evaluation strategy from the audited prefix-array code — so agreement is
//! evidence about the math, not the shared implementation.

use coreset_core::{cost, relative_error, CostParams};
use coreset_oned::{coreset_1d_1median, Sorted1D};
use coreset_verify::{audit_1d_1median, AuditMethod, PiecewiseAffineCost, VerifyError};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// One-median cost of `(coords, weights)` (already sorted) at every grid
/// center, by an ascending sweep that moves points across the center with
/// running sums. O(n + grid) total, plain summation.
fn sweep_costs(coords: &[f64], weights: &[f64], grid: &[f64]) -> Vec<f64> {
    let w_tot: f64 = weights.iter().sum();
    let wx_tot: f64 = coords.iter().zip(weights).map(|(x, w)| x * w).sum();
    let mut out = Vec::with_capacity(grid.len());
    let mut i = 0usize;
    let mut w_lt = 0.0;
    let mut wx_lt = 0.0;
    for &c in grid {
        while i < coords.len() && coords[i] < c {
            w_lt += weights[i];
            wx_lt += coords[i] * weights[i];
            i += 1;
        }
        out.push((c * w_lt - wx_lt) + (wx_tot - wx_lt) - c * (w_tot - w_lt));
    }
    out
}

fn random_sorted(seed: u64, n: usize) -> Sorted1D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
    Sorted1D::from_unsorted(coords, weights).unwrap()
}

#[test]
fn identical_sets_have_zero_error() {
    let p = random_sorted(1, 300);
    let report = audit_1d_1median(&p, &p).unwrap();
    assert_eq!(report.method, AuditMethod::ExactK1);
    assert!(
        report.max_rel_error <= 1e-15,
        "self-audit reported {}",
        report.max_rel_error
    );
}

#[test]
fn collapsing_two_points_to_their_median_errs_fully_at_the_median() {
    // P = {0, 1}; replacing it by the midpoint with weight 2 preserves the
    // cost at every center outside (0, 1) but pays nothing at 1/2 where P
    // pays 1, so the worst relative error is exactly 1, at c = 1/2.
    let p = Sorted1D::from_coords(vec![0.0, 1.0]).unwrap();
    let s = Sorted1D::from_unsorted(vec![0.5], vec![2.0]).unwrap();
    let report = audit_1d_1median(&p, &s).unwrap();
    assert!((report.max_rel_error - 1.0).abs() < 1e-12);
    assert!((report.witness_centers.coords()[0] - 0.5).abs() < 1e-12);
}

#[test]
fn summary_dropping_weight_is_caught_at_infinity() {
    // S keeps the shape of P but only 90% of the mass; far away the ratio
    // tends to |W_P − W_S| / W_P = 0.1 while near the data it is smaller.
    let coords = vec![0.0, 1.0, 2.0, 3.0];
    let p = Sorted1D::from_unsorted(coords.clone(), vec![1.0; 4]).unwrap();
    let s = Sorted1D::from_unsorted(coords, vec![0.9; 4]).unwrap();
    let report = audit_1d_1median(&p, &s).unwrap();
    // Here f_S = 0.9·f_P identically, so the ratio is 0.1 at every center
    // (including the far probes standing in for the ±∞ limits).
    assert!(
        (report.max_rel_error - 0.1).abs() < 1e-9,
        "reported {}",
        report.max_rel_error
    );
}

#[test]
fn exact_audit_dominates_a_million_point_grid() {
    for (seed, n, eps) in [(7u64, 10_000, 0.1), (8, 400, 0.2), (9, 400, 0.2)] {
        let p = random_sorted(seed, n);
        let s = coreset_1d_1median(&p, eps).unwrap();
        let s1 = Sorted1D::from_point_set(&s).unwrap();
        let report = audit_1d_1median(&p, &s1).unwrap();

        let lo = p.coords()[0] - 3.0;
        let hi = p.coords()[p.len() - 1] + 3.0;
        let m = 1_000_000usize;
        let grid: Vec<f64> = (0..=m)
            .map(|i| lo + (hi - lo) * i as f64 / m as f64)
            .collect();
        let cp = sweep_costs(p.coords(), p.weights(), &grid);
        let cs = sweep_costs(s1.coords(), s1.weights(), &grid);
        let grid_max = cp
            .iter()
            .zip(&cs)
            .map(|(&a, &b)| relative_error(a, b))
            .fold(f64::NEG_INFINITY, f64::max);

        assert!(
            report.max_rel_error >= grid_max - 1e-12,
            "seed {seed}: exact {} below grid {}",
            report.max_rel_error,
            grid_max
        );
        // The grid is fine enough to come close to the true maximum.
        assert!(
            report.max_rel_error - grid_max <= 1e-3 * report.max_rel_error.max(1e-6),
            "seed {seed}: exact {} too far above grid {}",
            report.max_rel_error,
            grid_max
        );
    }
}

#[test]
fn witness_reproduces_reported_error_through_generic_cost() {
    for seed in [21u64, 22, 23, 24] {
        let p = random_sorted(seed, 250);
        let set = p.to_point_set();
        let s = coreset_1d_1median(&p, 0.1).unwrap();
        let s1 = Sorted1D::from_point_set(&s).unwrap();
        let report = audit_1d_1median(&p, &s1).unwrap();

        let cost_p = cost(&set, &report.witness_centers, CostParams::median()).unwrap();
        let cost_s = cost(&s, &report.witness_centers, CostParams::median()).unwrap();
        let replayed = relative_error(cost_p, cost_s);
        assert!(
            (replayed - report.max_rel_error).abs() <= 1e-9 * report.max_rel_error.max(1.0),
            "seed {seed}: witness replays {replayed}, report said {}",
            report.max_rel_error
        );
    }
}

#[test]
fn audit_value_bounds_every_sampled_center() {
    let p = random_sorted(33, 150);
    let s = coreset_1d_1median(&p, 0.15).unwrap();
    let s1 = Sorted1D::from_point_set(&s).unwrap();
    let report = audit_1d_1median(&p, &s1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..2000 {
        let c = rng.gen_range(-20.0..20.0);
        let r = relative_error(p.cost_at(c), s1.cost_at(c));
        assert!(r <= report.max_rel_error + 1e-12, "beaten at c={c}: {r}");
    }
}

#[test]
fn one_median_curves_of_random_data_are_convex() {
    for seed in [41u64, 42, 43] {
        let p = random_sorted(seed, 500);
        let f = PiecewiseAffineCost::one_median(&p).unwrap();
        let defect = f.convexity_defect();
        assert!(
            defect <= 1e-8 * p.total_weight(),
            "seed {seed}: convexity defect {defect}"
        );
    }
}

#[test]
fn empty_reference_is_rejected() {
    let p = Sorted1D::from_coords(vec![]).unwrap();
    let s = Sorted1D::from_coords(vec![0.0]).unwrap();
    assert!(matches!(
        audit_1d_1median(&p, &s),
        Err(VerifyError::EmptyReference)
    ));
}

#[test]
fn report_serializes_with_stable_fields() {
    let p = Sorted1D::from_coords(vec![0.0, 1.0, 2.0]).unwrap();
    let report = audit_1d_1median(&p, &p).unwrap();
    let json = report.to_json();
    assert_eq!(json["method"], "exact-k1");
    assert!(json["max_rel_error"].is_number());
    assert!(json["witness"].is_array());
    assert!(json["evaluations"].as_u64().unwrap() >= 3);
    assert!(json["seed"].is_null());
}

#[test]
fn empty_summary_shows_pure_loss_everywhere() {
    let p = Sorted1D::from_coords(vec![0.0, 1.0, 2.0]).unwrap();
    let empty = Sorted1D::from_coords(vec![]).unwrap();
    let loss = audit_1d_1median(&p, &empty).unwrap();
    assert_eq!(loss.max_rel_error, 1.0);
}
