//! Per-subspace adversarial queries for the all-basis subspace layout.
//!
//! Given a weighted subset of the instance, each subspace gets one query
//! center pointed along `v_j = Σ_i w_i e_i − Σ_i e_i` — the direction in
//! which the subset's weights deviate from the full basis. The resulting
//! squared-cost gap between instance and subset has the closed form
//! `2kd − 2Σw + 2Σ‖v_j‖`, which the builder verifies before returning.

use crate::{HardGenError, SubspaceInstance, SubspaceVariant};
use coreset_core::{cost, CenterSet, CostParams, KahanSum, WeightedPointSet};

/// One center per subspace, sitting exactly on the anchor. Every instance
/// point is at distance 1 from its anchor, so the instance's cost against
/// this family is its point count for any exponent.
pub fn anchor_queries(inst: &SubspaceInstance) -> Result<CenterSet, HardGenError> {
    let mut coords = Vec::new();
    for g in 0..inst.subspace_count() {
        coords.extend_from_slice(&inst.anchor(g));
    }
    Ok(CenterSet::new(inst.ambient_dim(), coords)?)
}

/// What [`adversarial_queries`] measured, all with squared distances
/// (exponent 2) regardless of the instance's sizing exponent — the gap
/// identity is quadratic.
#[derive(Debug, Clone)]
pub struct GapReport {
    /// Instance cost against the adversarial queries; equals `2kd` when
    /// every deviation direction is orthogonal to the all-ones direction.
    pub cost_p: f64,
    /// Subset cost against the adversarial queries.
    pub cost_c: f64,
    /// `cost_p − cost_c`, the quantity the queries are built to expose.
    pub gap: f64,
    /// The closed form `2kd − 2Σw + 2Σ‖v_j‖` the gap must equal.
    pub predicted_gap: f64,
    /// Instance cost against the anchors: the point count `kd`.
    pub anchor_cost_p: f64,
    /// Subset cost against the anchors: its total weight.
    pub anchor_cost_c: f64,
    /// Per-subspace deviation norms `‖v_j‖`.
    pub norms: Vec<f64>,
}

impl GapReport {
    /// Relative coreset error witnessed at the adversarial queries.
    pub fn relative_gap(&self) -> f64 {
        self.gap.abs() / self.cost_p
    }
}

/// Builds the per-subspace adversarial queries for a weighted subset of the
/// all-basis instance and verifies the closed-form gap.
///
/// Every subset point must coincide exactly with an instance point (same
/// anchor, same basis axis); duplicates accumulate weight. A subspace whose
/// subset matches the full basis with unit weights has `v_j = 0`; it gets
/// the harmless `e_1` direction, contributing exactly zero to the gap, so
/// the center count stays `k` and the closed form still holds.
pub fn adversarial_queries(
    inst: &SubspaceInstance,
    coreset: &WeightedPointSet,
) -> Result<(CenterSet, GapReport), HardGenError> {
    if inst.variant() != SubspaceVariant::Appendix {
        return Err(HardGenError::WrongVariant {
            required: "appendix",
        });
    }
    if coreset.dim() != inst.ambient_dim() {
        return Err(HardGenError::DimensionMismatch {
            expected: inst.ambient_dim(),
            got: coreset.dim(),
        });
    }
    let k = inst.k();
    let d = inst.d();
    let lscale = inst.separation();

    // Accumulated subset weight per (subspace, basis axis).
    let mut kept = vec![vec![0.0f64; d]; k];
    for (idx, (p, w)) in coreset.iter().enumerate() {
        let j_est = (p[0] / lscale).round();
        let not_subset = HardGenError::NotSubsetPoint { index: idx };
        if !(1.0..=k as f64).contains(&j_est) || p[0] != j_est * lscale {
            return Err(not_subset);
        }
        let mut axis = None;
        for (c, &x) in p[1..].iter().enumerate() {
            if x == 1.0 && axis.is_none() {
                axis = Some(c);
            } else if x != 0.0 {
                return Err(not_subset);
            }
        }
        let Some(axis) = axis else {
            return Err(not_subset);
        };
        kept[j_est as usize - 1][axis] += w;
    }

    let mut coords = Vec::new();
    let mut norms = Vec::with_capacity(k);
    let mut norm_sum = KahanSum::new();
    for (g, kept_row) in kept.iter().enumerate() {
        let v: Vec<f64> = kept_row.iter().map(|w| w - 1.0).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        norms.push(norm);
        norm_sum.add(norm);
        let mut center = inst.anchor(g);
        if norm > 0.0 {
            for (c, x) in center[1..].iter_mut().zip(&v) {
                *c = x / norm;
            }
        } else {
            center[1] = 1.0;
        }
        coords.extend_from_slice(&center);
    }
    let queries = CenterSet::new(inst.ambient_dim(), coords)?;

    let squared = CostParams::means();
    let cost_p = cost(inst.points(), &queries, squared)?;
    let cost_c = cost(coreset, &queries, squared)?;
    let gap = cost_p - cost_c;
    let predicted_gap =
        2.0 * (k * d) as f64 - 2.0 * coreset.total_weight() + 2.0 * norm_sum.value();
    let tol = 1e-9 * cost_p.abs().max(1.0);
    if (gap - predicted_gap).abs() > tol {
        return Err(HardGenError::CertificateMismatch {
            what: "adversarial-gap",
            got: gap,
            want: predicted_gap,
        });
    }

    let anchors = anchor_queries(inst)?;
    let anchor_cost_p = cost(inst.points(), &anchors, squared)?;
    let anchor_cost_c = cost(coreset, &anchors, squared)?;
    let want_anchor = (k * d) as f64;
    if (anchor_cost_p - want_anchor).abs() > 1e-9 * want_anchor {
        return Err(HardGenError::CertificateMismatch {
            what: "anchor-query-cost",
            got: anchor_cost_p,
            want: want_anchor,
        });
    }

    Ok((
        queries,
        GapReport {
            cost_p,
            cost_c,
            gap,
            predicted_gap,
            anchor_cost_p,
            anchor_cost_c,
            norms,
        },
    ))
}
