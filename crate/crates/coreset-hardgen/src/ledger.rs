//! The inequality ledger: every closed-form equality and inequality the
//! three certificate center families impose on a purported summary of the
//! main subspace instance, evaluated as numbers with pass/fail flags.
//!
//! The ledger never decides whether a summary "is" a coreset — that
//! quantifies over all center sets. It decides something weaker but
//! machine-checkable: whether the summary survives the specific center
//! families whose costs have closed forms. The genuine instance passes
//! every line with equality at accuracy zero; any summary that distorts
//! weight mass, tail mass, or small-group structure trips at least one
//! line at its claimed accuracy.

use crate::{
    antipodal_centers, hadamard_centers, largest_hadamard_order, orthogonal_centers,
    partition_by_anchor, size_constraint_ratio, HardGenError, SubspaceInstance,
};
use coreset_core::{cost, CostParams, KahanSum, WeightedPointSet};

/// Fixed seed for the ledger's internal aligned-pair search, so ledger
/// runs are reproducible without threading a seed through every call.
const ALIGNMENT_SEED: u64 = 23;

/// One evaluated constraint, always in `lhs ≤ rhs` form, with a flag that
/// allows `1e-9`-scale slack for floating-point noise.
#[derive(Debug, Clone, Copy)]
pub struct LedgerLine {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
}

/// All measured quantities of one summary against one instance at one
/// exponent; [`InequalityLedger::check`] turns them into constraint lines
/// for a claimed accuracy.
#[derive(Debug, Clone)]
pub struct InequalityLedger {
    k: usize,
    d: usize,
    z: f64,
    size_ratio: f64,
    small_group_threshold: f64,
    small_groups: Vec<usize>,
    kappa: f64,
    weight_term: f64,
    identity_residual: f64,
    tail_mass: f64,
    cost_p_orthogonal: f64,
    cost_s_orthogonal: f64,
    cost_p_antipodal: f64,
    cost_s_antipodal: f64,
    antipodal_floor: f64,
    hadamard_closed_form: f64,
    cost_p_hadamard: Vec<f64>,
    cost_s_hadamard: Vec<f64>,
}

impl InequalityLedger {
    pub fn z(&self) -> f64 {
        self.z
    }

    /// The ratio `t = 4·max{1,(z/2)²}/min{1,(z/2)²}` entering the
    /// general-exponent size constraint.
    pub fn size_ratio(&self) -> f64 {
        self.size_ratio
    }

    pub fn small_group_threshold(&self) -> f64 {
        self.small_group_threshold
    }

    /// 0-based subspaces whose summary groups are small.
    pub fn small_groups(&self) -> &[usize] {
        &self.small_groups
    }

    /// The large-group correction in the orthogonal-family cost identity:
    /// at exponent 2 the signed inner-product term, otherwise the large
    /// groups' full cost.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// At exponent 2, `Σ w·(Δ² + ‖p̃‖² + 1)` over the whole summary;
    /// otherwise the same expression to the `z/2` over small groups only.
    pub fn weight_term(&self) -> f64 {
        self.weight_term
    }

    /// How far the measured orthogonal-family cost of the summary is from
    /// its decomposition into weight term and correction. Anything beyond
    /// rounding noise indicates a construction bug.
    pub fn identity_residual(&self) -> f64 {
        self.identity_residual
    }

    /// Weighted small-group tail mass (with the `z/2−1` power factor away
    /// from exponent 2).
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn cost_p_orthogonal(&self) -> f64 {
        self.cost_p_orthogonal
    }

    pub fn cost_s_orthogonal(&self) -> f64 {
        self.cost_s_orthogonal
    }

    pub fn cost_p_antipodal(&self) -> f64 {
        self.cost_p_antipodal
    }

    pub fn cost_s_antipodal(&self) -> f64 {
        self.cost_s_antipodal
    }

    /// Closed-form floor on the instance's antipodal-family cost.
    pub fn antipodal_floor(&self) -> f64 {
        self.antipodal_floor
    }

    /// Closed form for the instance's Hadamard-family cost: an equality at
    /// exponent 2, an upper bound otherwise.
    pub fn hadamard_closed_form(&self) -> f64 {
        self.hadamard_closed_form
    }

    /// Instance cost per Hadamard row (row `ell` at index `ell − 1`).
    pub fn cost_p_hadamard(&self) -> &[f64] {
        &self.cost_p_hadamard
    }

    pub fn cost_s_hadamard(&self) -> &[f64] {
        &self.cost_s_hadamard
    }

    /// Evaluates every constraint a summary of claimed accuracy `eps` must
    /// satisfy. At `eps = 0` the instance itself passes every line with
    /// equality.
    pub fn check(&self, eps: f64) -> Vec<LedgerLine> {
        let line = |name: &'static str, lhs: f64, rhs: f64| {
            let tol = 1e-9 * lhs.abs().max(rhs.abs()).max(1.0);
            LedgerLine {
                name,
                lhs,
                rhs,
                satisfied: lhs <= rhs + tol,
            }
        };
        let kd = (self.k * self.d) as f64;
        let sqrt_d = (self.d as f64).sqrt();
        let k = self.k as f64;
        let groups = self.small_groups.len() as f64;
        let pow = 2f64.powf(self.z / 2.0);
        let lo = (self.z / 2.0).min(1.0);
        let hi = (self.z / 2.0).max(1.0);
        let closed_cost = kd / 4.0 * pow;
        let balance = if self.z == 2.0 {
            self.weight_term - self.kappa
        } else {
            self.weight_term + self.kappa
        };
        let rel = |s: f64, p: f64| (s - p).abs() / p;
        let worst_hadamard = self
            .cost_p_hadamard
            .iter()
            .zip(&self.cost_s_hadamard)
            .map(|(&p, &s)| rel(s, p))
            .fold(0.0f64, f64::max);

        let mut lines = vec![
            line(
                "orthogonal-cost-form",
                (self.cost_p_orthogonal - closed_cost).abs(),
                0.0,
            ),
            line("orthogonal-identity", self.identity_residual, 0.0),
            line("weight-lower", closed_cost * (1.0 - eps), balance),
            line("weight-upper", balance, closed_cost * (1.0 + eps)),
            line(
                "coreset-at-orthogonal",
                rel(self.cost_s_orthogonal, self.cost_p_orthogonal),
                eps,
            ),
            line(
                "coreset-at-antipodal",
                rel(self.cost_s_antipodal, self.cost_p_antipodal),
                eps,
            ),
            line("coreset-at-hadamard", worst_hadamard, eps),
            line("antipodal-cost-floor", self.antipodal_floor, self.cost_p_antipodal),
        ];
        if self.z == 2.0 {
            let form_dev = self
                .cost_p_hadamard
                .iter()
                .map(|&p| (p - self.hadamard_closed_form).abs())
                .fold(0.0f64, f64::max);
            lines.push(line("hadamard-cost-form", form_dev, 0.0));
            lines.push(line(
                "size-constraint",
                self.tail_mass / sqrt_d,
                (groups * sqrt_d + eps * k * self.d as f64) / 4.0,
            ));
            lines.push(line(
                "tail-mass-lower",
                (self.d as f64 * groups - eps * k * self.d as f64 * sqrt_d) / 2.0,
                self.tail_mass,
            ));
            lines.push(line("small-group-count", groups, 3.0 * eps * k * sqrt_d));
        } else {
            let form_max = self
                .cost_p_hadamard
                .iter()
                .fold(f64::NEG_INFINITY, |a, &p| a.max(p));
            lines.push(line("hadamard-cost-form", form_max, self.hadamard_closed_form));
            lines.push(line(
                "size-constraint",
                lo * self.tail_mass / sqrt_d,
                (hi * groups * sqrt_d + eps * k * self.d as f64 / 2.0) * pow
                    / (2.0 * self.size_ratio),
            ));
            lines.push(line(
                "tail-mass-lower",
                pow * (self.d as f64 * groups / 2.0 * lo
                    - eps * k * self.d as f64 * sqrt_d / 2.0),
                2.0 * hi * self.tail_mass,
            ));
            lines.push(line("small-group-count", groups, 4.0 * eps * k * sqrt_d / lo));
        }
        lines
    }
}

/// Measures a candidate summary of the main subspace instance against the
/// three certificate center families at exponent `z`, producing the ledger
/// of closed-form constraints.
///
/// `z` is taken explicitly (rather than from the instance) so one planted
/// geometry can be audited under several exponents; the instance's own
/// exponent only sized its separation, which any `z` with `2^z` at most
/// the sizing value respects.
pub fn inequality_ledger(
    inst: &SubspaceInstance,
    s: &WeightedPointSet,
    z: f64,
) -> Result<InequalityLedger, HardGenError> {
    let pars = CostParams::new(z)?;
    let part = partition_by_anchor(inst, s, z)?;
    let d = inst.d();
    let k = inst.k();
    let default_axis = d / 2; // tail index of e_{d/2+1}

    let c1 = orthogonal_centers(inst, &part)?;
    let cost_p_orthogonal = cost(inst.points(), &c1, pars)?;
    let cost_s_orthogonal = cost(s, &c1, pars)?;

    let mut weight_term = KahanSum::new();
    let mut kappa = KahanSum::new();
    let mut tail_mass = KahanSum::new();
    for i in 0..part.len() {
        let w = part.weight(i);
        let tail = part.tail(i);
        let delta = part.delta(i);
        let norm_sq: f64 = tail.iter().map(|t| t * t).sum();
        let base = delta * delta + norm_sq + 1.0;
        let small = part.is_small(part.subspace_of(i));
        if z == 2.0 {
            weight_term.add(w * base);
            if small {
                tail_mass.add(w * norm_sq.sqrt());
            } else {
                // Large groups keep the default direction, so the signed
                // correction reduces to the default-axis coordinate.
                kappa.add(2.0 * w * tail[default_axis]);
            }
        } else if small {
            weight_term.add(w * base.powf(z / 2.0));
            tail_mass.add(w * base.powf(z / 2.0 - 1.0) * norm_sq.sqrt());
        } else {
            let dist_sq = base - 2.0 * tail[default_axis];
            kappa.add(w * dist_sq.powf(z / 2.0));
        }
    }
    let weight_term = weight_term.value();
    let kappa = kappa.value();
    let identity = if z == 2.0 {
        weight_term - kappa
    } else {
        weight_term + kappa
    };
    let identity_residual = (cost_s_orthogonal - identity).abs();

    let (c2, _alignment) = antipodal_centers(inst, &part, ALIGNMENT_SEED)?;
    let cost_p_antipodal = cost(inst.points(), &c2, pars)?;
    let cost_s_antipodal = cost(s, &c2, pars)?;
    let small_groups = part.small_groups();
    let groups = small_groups.len() as f64;
    let kd = (k * d) as f64;
    let sqrt_d = (d as f64).sqrt();
    let antipodal_floor = if z == 2.0 {
        kd / 2.0 - sqrt_d * groups
    } else {
        2f64.powf(z / 2.0) * (kd / 4.0 - (z / 2.0).max(1.0) * sqrt_d * groups)
    };

    let m = largest_hadamard_order(d);
    let mut cost_p_hadamard = Vec::with_capacity(m);
    let mut cost_s_hadamard = Vec::with_capacity(m);
    for ell in 1..=m {
        let c3 = hadamard_centers(inst, &part, ell)?;
        cost_p_hadamard.push(cost(inst.points(), &c3, pars)?);
        cost_s_hadamard.push(cost(s, &c3, pars)?);
    }
    let sqrt_m = (m as f64).sqrt();
    let hadamard_closed_form = if z == 2.0 {
        kd / 2.0 - d as f64 * groups / sqrt_m
    } else {
        2f64.powf(z / 2.0) * (kd / 4.0 - d as f64 * groups / 2.0 * (z / 2.0).min(1.0) / sqrt_m)
    };

    Ok(InequalityLedger {
        k,
        d,
        z,
        size_ratio: size_constraint_ratio(z),
        small_group_threshold: part.threshold(),
        small_groups,
        kappa,
        weight_term,
        identity_residual,
        tail_mass: tail_mass.value(),
        cost_p_orthogonal,
        cost_s_orthogonal,
        cost_p_antipodal,
        cost_s_antipodal,
        antipodal_floor,
        hadamard_closed_form,
        cost_p_hadamard,
        cost_s_hadamard,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{gen_subspace_instance, SubspaceVariant};

    const LINE_NAMES: [&str; 12] = [
        "orthogonal-cost-form",
        "orthogonal-identity",
        "weight-lower",
        "weight-upper",
        "coreset-at-orthogonal",
        "coreset-at-antipodal",
        "coreset-at-hadamard",
        "antipodal-cost-floor",
        "hadamard-cost-form",
        "size-constraint",
        "tail-mass-lower",
        "small-group-count",
    ];

    #[test]
    fn instance_passes_its_own_ledger_exactly_at_exponent_two() {
        let inst = gen_subspace_instance(4, 8, 2.0, SubspaceVariant::Main).unwrap();
        let ledger = inequality_ledger(&inst, inst.points(), 2.0).unwrap();
        // Coordinate sums are exact; measured costs pass through a square
        // root and carry ulp-level noise, so those get a tiny tolerance.
        assert_eq!(ledger.weight_term(), 4.0 * 8.0 / 2.0);
        assert_eq!(ledger.kappa(), 0.0);
        assert!(ledger.identity_residual() <= 1e-12);
        assert_eq!(ledger.tail_mass(), 0.0);
        assert!(ledger.small_groups().is_empty());
        assert!((ledger.cost_p_orthogonal() - 16.0).abs() <= 1e-12);
        assert!((ledger.cost_s_orthogonal() - 16.0).abs() <= 1e-12);
        let lines = ledger.check(0.0);
        let names: Vec<&str> = lines.iter().map(|l| l.name).collect();
        assert_eq!(names, LINE_NAMES);
        for l in &lines {
            assert!(l.satisfied, "{} violated: {} vs {}", l.name, l.lhs, l.rhs);
        }
    }

    #[test]
    fn instance_passes_its_own_ledger_at_general_exponents() {
        let inst = gen_subspace_instance(4, 8, 3.0, SubspaceVariant::Main).unwrap();
        for z in [1.0, 1.5, 3.0] {
            let ledger = inequality_ledger(&inst, inst.points(), z).unwrap();
            assert!(ledger.small_groups().is_empty());
            let want = 8.0 * 2f64.powf(z / 2.0);
            assert!((ledger.kappa() - want).abs() <= 1e-12 * want, "z={z}");
            assert_eq!(ledger.weight_term(), 0.0);
            assert!(ledger.identity_residual() <= 1e-9, "z={z}");
            for l in ledger.check(0.0) {
                assert!(l.satisfied, "z={z}: {} violated: {} vs {}", l.name, l.lhs, l.rhs);
            }
        }
    }

    #[test]
    fn cost_identity_survives_a_shift_along_the_default_axis() {
        // Moving one summary point along e_{d/2+1} makes the signed
        // correction nonzero; the identity must still close, which pins
        // down the correction's sign.
        let inst = gen_subspace_instance(4, 8, 2.0, SubspaceVariant::Main).unwrap();
        let mut coords = Vec::new();
        for (p, _) in inst.points().iter() {
            coords.extend_from_slice(p);
        }
        coords[5] = 0.3; // point 0, ambient axis d/2 + 1
        let s = WeightedPointSet::unit_weights(9, coords).unwrap();
        let ledger = inequality_ledger(&inst, &s, 2.0).unwrap();
        assert!((ledger.kappa() - 0.6).abs() <= 1e-12);
        assert!(
            ledger.identity_residual() <= 1e-9,
            "identity residual {} betrays a sign error",
            ledger.identity_residual()
        );
    }

    #[test]
    fn weight_distortion_trips_the_weight_and_cost_lines() {
        let inst = gen_subspace_instance(4, 8, 2.0, SubspaceVariant::Main).unwrap();
        let coords: Vec<f64> = inst.points().coords().to_vec();
        let weights = vec![2.0; inst.points().len()];
        let s = WeightedPointSet::new(9, coords, weights).unwrap();
        let ledger = inequality_ledger(&inst, &s, 2.0).unwrap();
        let lines = ledger.check(0.1);
        let by_name = |n: &str| lines.iter().find(|l| l.name == n).unwrap();
        assert!(!by_name("weight-upper").satisfied);
        assert!(!by_name("coreset-at-orthogonal").satisfied);
        assert!(by_name("weight-lower").satisfied);
        assert!(by_name("small-group-count").satisfied);
        assert!(by_name("orthogonal-identity").satisfied);
    }

    #[test]
    fn missing_subspace_shows_up_in_small_group_lines() {
        // Keep subspace 2 only: subspace 1 becomes an empty small group,
        // which at accuracy 0 violates the small-group count and the
        // tail-mass floor.
        let inst = gen_subspace_instance(4, 8, 2.0, SubspaceVariant::Main).unwrap();
        let mut coords = Vec::new();
        for i in 4..8 {
            coords.extend_from_slice(inst.points().point(i));
        }
        let s = WeightedPointSet::unit_weights(9, coords).unwrap();
        let ledger = inequality_ledger(&inst, &s, 2.0).unwrap();
        assert_eq!(ledger.small_groups(), &[0]);
        let lines = ledger.check(0.0);
        let by_name = |n: &str| lines.iter().find(|l| l.name == n).unwrap();
        assert!(!by_name("small-group-count").satisfied);
        assert!(!by_name("tail-mass-lower").satisfied);
        assert!(!by_name("weight-lower").satisfied);
        // With eps large enough the same summary is no longer refuted by
        // the counting lines.
        let relaxed = ledger.check(0.5);
        assert!(relaxed.iter().find(|l| l.name == "small-group-count").unwrap().satisfied);
    }

    #[test]
    fn empty_summary_is_measured_without_panicking() {
        let inst = gen_subspace_instance(2, 4, 2.0, SubspaceVariant::Main).unwrap();
        let empty = WeightedPointSet::new(5, vec![], vec![]).unwrap();
        let ledger = inequality_ledger(&inst, &empty, 2.0).unwrap();
        assert_eq!(ledger.weight_term(), 0.0);
        assert_eq!(ledger.identity_residual(), 0.0);
        assert_eq!(ledger.small_groups(), &[0]);
        let lines = ledger.check(0.0);
        assert!(!lines.iter().all(|l| l.satisfied));
    }

    #[test]
    fn ratio_and_threshold_match_their_formulas() {
        let inst = gen_subspace_instance(4, 8, 2.0, SubspaceVariant::Main).unwrap();
        let l2 = inequality_ledger(&inst, inst.points(), 2.0).unwrap();
        assert_eq!(l2.size_ratio(), 4.0);
        assert_eq!(l2.small_group_threshold(), 2.0);
        let l1 = inequality_ledger(&inst, inst.points(), 1.0).unwrap();
        assert_eq!(l1.size_ratio(), 16.0);
        assert_eq!(l1.small_group_threshold(), 8.0 / 256.0);
        let l3 = inequality_ledger(&inst, inst.points(), 3.0).unwrap();
        assert_eq!(l3.size_ratio(), 9.0);
        assert_eq!(l3.small_group_threshold(), 8.0 / 81.0);
    }
}
