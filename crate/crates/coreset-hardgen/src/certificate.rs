//! JSON certificate sidecars for the generated instances.
//!
//! A certificate records, next to the point data, the closed-form costs
//! and gaps the instance was built to realize, so a consumer can replay
//! the checks without access to the generator. Layout is uniform across
//! variants: `{variant, params, expected_costs, expected_gaps}`.

use crate::{Interval1DInstance, IntervalCopies, SubspaceInstance, SubspaceVariant};
use serde_json::{json, Value};

/// Closed-form total mass of the interval construction with `count`
/// intervals: a geometric series summing to `(4/3)·(1 − 4^{-count})`.
fn interval_total_weight(count: usize) -> f64 {
    4.0 / 3.0 * (1.0 - 0.25f64.powi(count as i32))
}

/// Sidecar for the one-dimensional interval instance. The headline claim
/// is the ceiling `2/eps` on the cost against any pair of centers with
/// one center pinned at the origin.
pub fn interval_certificate(inst: &Interval1DInstance) -> Value {
    json!({
        "variant": "interval-1d",
        "params": {
            "eps": inst.eps(),
            "requested_eps": inst.requested_eps(),
            "interval_count": inst.interval_count(),
            "points_per_interval": inst.points_per_interval(),
        },
        "expected_costs": {
            "pair_cost_ceiling": 2.0 / inst.eps(),
            "total_weight": interval_total_weight(inst.interval_count()),
        },
        "expected_gaps": {},
    })
}

/// Sidecar for the translated-copies instance. The query family built
/// from any admissible choice of copies stays below `k/eps` in cost.
pub fn copies_certificate(copies: &IntervalCopies) -> Value {
    let eps = copies.base().eps();
    json!({
        "variant": "interval-copies",
        "params": {
            "k": copies.k(),
            "copy_count": copies.copy_count(),
            "eps": eps,
            "separation": copies.separation(),
        },
        "expected_costs": {
            "query_cost_ceiling": copies.k() as f64 / eps,
            "total_weight": copies.copy_count() as f64
                * interval_total_weight(copies.base().interval_count()),
        },
        "expected_gaps": {},
    })
}

/// Sidecar for the planted-subspace instances. Both layouts place every
/// point at distance exactly 1 from its anchor, so the anchor-query cost
/// equals the point count at any exponent. The main layout additionally
/// certifies the orthogonal-family cost `(kd/4)·2^{z/2}`; the appendix
/// layout certifies that the full instance, used as its own summary,
/// reproduces the adversarial query costs with zero gap.
pub fn subspace_certificate(inst: &SubspaceInstance) -> Value {
    let params = json!({
        "k": inst.k(),
        "d": inst.d(),
        "z": inst.z(),
        "separation": inst.separation(),
    });
    let n = inst.points().len() as f64;
    match inst.variant() {
        SubspaceVariant::Main => json!({
            "variant": "subspace-main",
            "params": params,
            "expected_costs": {
                "orthogonal_family": n * 2f64.powf(inst.z() / 2.0),
                "anchor_query": n,
            },
            "expected_gaps": {},
        }),
        SubspaceVariant::Appendix => json!({
            "variant": "subspace-appendix",
            "params": params,
            "expected_costs": {
                "anchor_query": n,
            },
            "expected_gaps": {
                "full_summary": 0.0,
            },
        }),
    }
}
