//! Hard instance in ℝ^{d+1}: orthonormal basis blocks planted on far-apart
//! parallel subspaces, plus the three certificate center families whose
//! costs the instance pins down in closed form.
//!
//! Subspace `j` (1-based) sits at anchor `jL·e_0` and carries the basis
//! points `jL·e_0 + e_i`. Because the anchors are astronomically far apart,
//! any sensible center family serves each subspace locally, and the cost of
//! the whole instance decomposes into per-subspace closed forms. A summary
//! is then squeezed from three sides: centers orthogonal to everything it
//! kept ([`orthogonal_centers`]), antipodal pairs aligned with what it kept
//! ([`antipodal_centers`]), and Hadamard directions that spread mass over
//! all coordinates at once ([`hadamard_centers`]).

use crate::{hadamard, largest_hadamard_order, HardGenError};
use coreset_core::{CenterSet, CostParams, WeightedPointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which layout of the planted-basis instance to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceVariant {
    /// `k/2` subspaces, each carrying the first `d/2` basis vectors; the
    /// layout behind the three certificate center families.
    Main,
    /// `k` subspaces, each carrying all `d` basis vectors; the layout
    /// probed by the adversarial per-subspace queries.
    Appendix,
}

impl SubspaceVariant {
    pub fn label(self) -> &'static str {
        match self {
            SubspaceVariant::Main => "main",
            SubspaceVariant::Appendix => "appendix",
        }
    }
}

/// The realized planted-basis instance in ℝ^{d+1} (coordinate 0 is the
/// anchor axis, coordinates 1..=d the basis axes).
#[derive(Debug, Clone)]
pub struct SubspaceInstance {
    k: usize,
    d: usize,
    z: f64,
    separation: f64,
    variant: SubspaceVariant,
    points: WeightedPointSet,
}

impl SubspaceInstance {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The cost exponent the instance was sized for. Only the separation
    /// scale depends on it; the point geometry does not.
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn variant(&self) -> SubspaceVariant {
        self.variant
    }

    /// The planted points, unit weights, dimension `d + 1`.
    pub fn points(&self) -> &WeightedPointSet {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    pub fn subspace_count(&self) -> usize {
        match self.variant {
            SubspaceVariant::Main => self.k / 2,
            SubspaceVariant::Appendix => self.k,
        }
    }

    pub fn points_per_subspace(&self) -> usize {
        match self.variant {
            SubspaceVariant::Main => self.d / 2,
            SubspaceVariant::Appendix => self.d,
        }
    }

    /// Anchor of subspace `group` (0-based), i.e. `(group+1)·L` on the
    /// anchor axis.
    pub fn anchor(&self, group: usize) -> Vec<f64> {
        let mut a = vec![0.0; self.ambient_dim()];
        a[0] = (group as f64 + 1.0) * self.separation;
        a
    }
}

/// Builds the planted-basis instance.
///
/// The main layout requires `k` and `d` positive and even; the appendix
/// layout only requires them positive. `z ≥ 1` sizes the separation scale
/// `L = 10⁶·k·d·max(1, 2^z)`, far enough that no certificate center ever
/// serves a point across subspaces.
pub fn gen_subspace_instance(
    k: usize,
    d: usize,
    z: f64,
    variant: SubspaceVariant,
) -> Result<SubspaceInstance, HardGenError> {
    CostParams::new(z)?;
    match variant {
        SubspaceVariant::Main => {
            if k == 0 || k % 2 != 0 {
                return Err(HardGenError::OddParameter { name: "k", value: k });
            }
            if d == 0 || d % 2 != 0 {
                return Err(HardGenError::OddParameter { name: "d", value: d });
            }
        }
        SubspaceVariant::Appendix => {
            if k == 0 {
                return Err(HardGenError::ZeroParameter { name: "k" });
            }
            if d == 0 {
                return Err(HardGenError::ZeroParameter { name: "d" });
            }
        }
    }
    let separation = 1e6 * (k * d) as f64 * 2f64.powf(z).max(1.0);
    let (groups, per) = match variant {
        SubspaceVariant::Main => (k / 2, d / 2),
        SubspaceVariant::Appendix => (k, d),
    };
    let ambient = d + 1;
    let mut coords = Vec::with_capacity(groups * per * ambient);
    for j in 1..=groups {
        for i in 1..=per {
            let mut p = vec![0.0; ambient];
            p[0] = j as f64 * separation;
            p[i] = 1.0;
            coords.extend_from_slice(&p);
        }
    }
    let points = WeightedPointSet::unit_weights(ambient, coords)?;
    Ok(SubspaceInstance {
        k,
        d,
        z,
        separation,
        variant,
        points,
    })
}

/// The group-size ratio entering the general-exponent size constraint:
/// `4·max{1,(z/2)²}/min{1,(z/2)²}`.
pub fn size_constraint_ratio(z: f64) -> f64 {
    let half_sq = (z / 2.0) * (z / 2.0);
    4.0 * half_sq.max(1.0) / half_sq.min(1.0)
}

/// Largest group size still treated as "small" (eligible for the
/// orthogonal/antipodal/Hadamard squeezes): `d/4` at `z = 2`, and `d/t²`
/// with `t` = [`size_constraint_ratio`] otherwise, which is what the
/// general-exponent size constraint needs.
pub fn small_group_threshold(d: usize, z: f64) -> f64 {
    if z == 2.0 {
        d as f64 / 4.0
    } else {
        let t = size_constraint_ratio(z);
        d as f64 / (t * t)
    }
}

/// A candidate summary split by nearest anchor, with the per-point
/// decomposition (anchor residual and basis-axes component) all
/// certificate formulas are written in.
#[derive(Debug, Clone)]
pub struct AnchorPartition {
    z: f64,
    dim: usize,
    threshold: f64,
    subspace_of: Vec<usize>,
    deltas: Vec<f64>,
    tails: Vec<Vec<f64>>,
    weights: Vec<f64>,
    groups: Vec<Vec<usize>>,
    small: Vec<bool>,
}

impl AnchorPartition {
    /// The exponent the small-group threshold was computed for.
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Number of basis axes (`d`); tails have this length.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Summary-point indices assigned to subspace `group` (0-based).
    pub fn group(&self, group: usize) -> &[usize] {
        &self.groups[group]
    }

    pub fn is_small(&self, group: usize) -> bool {
        self.small[group]
    }

    /// 0-based indices of the small groups, ascending.
    pub fn small_groups(&self) -> Vec<usize> {
        (0..self.groups.len()).filter(|&g| self.small[g]).collect()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Subspace the `i`-th summary point was assigned to.
    pub fn subspace_of(&self, i: usize) -> usize {
        self.subspace_of[i]
    }

    /// Anchor-axis residual of the `i`-th summary point.
    pub fn delta(&self, i: usize) -> f64 {
        self.deltas[i]
    }

    /// Basis-axes component of the `i`-th summary point (length `d`).
    pub fn tail(&self, i: usize) -> &[f64] {
        &self.tails[i]
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.weights[i]
    }
}

/// Assigns every summary point to its nearest anchor (first one on ties)
/// and records the decomposition `p = jL·e_0 + Δ·e_0 + p̃`. Groups of at
/// most [`small_group_threshold`] points are marked small.
///
/// Defined for the main layout; the appendix layout is probed by exact
/// subset queries instead.
pub fn partition_by_anchor(
    inst: &SubspaceInstance,
    s: &WeightedPointSet,
    z: f64,
) -> Result<AnchorPartition, HardGenError> {
    CostParams::new(z)?;
    if inst.variant() != SubspaceVariant::Main {
        return Err(HardGenError::WrongVariant { required: "main" });
    }
    if s.dim() != inst.ambient_dim() {
        return Err(HardGenError::DimensionMismatch {
            expected: inst.ambient_dim(),
            got: s.dim(),
        });
    }
    let count = inst.subspace_count();
    let lscale = inst.separation();
    let mut subspace_of = Vec::with_capacity(s.len());
    let mut deltas = Vec::with_capacity(s.len());
    let mut tails = Vec::with_capacity(s.len());
    let mut weights = Vec::with_capacity(s.len());
    let mut groups = vec![Vec::new(); count];
    for (i, (p, w)) in s.iter().enumerate() {
        let mut best = 0usize;
        let mut best_dist = f64::INFINITY;
        for g in 0..count {
            let dist = (p[0] - (g as f64 + 1.0) * lscale).abs();
            if dist < best_dist {
                best = g;
                best_dist = dist;
            }
        }
        subspace_of.push(best);
        deltas.push(p[0] - (best as f64 + 1.0) * lscale);
        tails.push(p[1..].to_vec());
        weights.push(w);
        groups[best].push(i);
    }
    let threshold = small_group_threshold(inst.d(), z);
    let small = groups.iter().map(|g| g.len() as f64 <= threshold).collect();
    Ok(AnchorPartition {
        z,
        dim: inst.d(),
        threshold,
        subspace_of,
        deltas,
        tails,
        weights,
        groups,
        small,
    })
}

fn check_partition(inst: &SubspaceInstance, part: &AnchorPartition) -> Result<(), HardGenError> {
    if inst.variant() != SubspaceVariant::Main {
        return Err(HardGenError::WrongVariant { required: "main" });
    }
    if part.dim() != inst.d() || part.group_count() != inst.subspace_count() {
        return Err(HardGenError::DimensionMismatch {
            expected: inst.d(),
            got: part.dim(),
        });
    }
    Ok(())
}

/// A unit vector in the null space of the given constraint rows, or `None`
/// if the rows span the whole space. Entries below `1e-12` of the largest
/// row entry are treated as zero.
fn null_space_direction(rows: &[Vec<f64>], dim: usize) -> Option<Vec<f64>> {
    let mut mat: Vec<Vec<f64>> = rows.to_vec();
    let scale = mat
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &x| a.max(x.abs()))
        .max(1.0);
    let tol = 1e-12 * scale;
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0usize;
    for col in 0..dim {
        if row >= mat.len() {
            break;
        }
        let best = (row..mat.len()).max_by(|&a, &b| mat[a][col].abs().total_cmp(&mat[b][col].abs()))?;
        if mat[best][col].abs() <= tol {
            continue;
        }
        mat.swap(row, best);
        for r in row + 1..mat.len() {
            let f = mat[r][col] / mat[row][col];
            for c in col..dim {
                mat[r][c] -= f * mat[row][c];
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let free = (0..dim).find(|c| pivots.iter().all(|&(_, pc)| pc != *c))?;
    let mut x = vec![0.0; dim];
    x[free] = 1.0;
    for &(r, pc) in pivots.iter().rev() {
        let s: f64 = (pc + 1..dim).map(|c| mat[r][c] * x[c]).sum();
        x[pc] = -s / mat[r][pc];
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    Some(x.iter().map(|v| v / norm).collect())
}

/// Index (within a tail vector) of the default orthogonal direction
/// `e_{d/2+1}`: the first axis outside the planted basis block.
fn default_direction(d: usize) -> usize {
    d / 2
}

fn embed_center(inst: &SubspaceInstance, group: usize, tail: &[f64]) -> Vec<f64> {
    let mut c = inst.anchor(group);
    c[1..].copy_from_slice(tail);
    c
}

/// First certificate family: one direction per subspace, orthogonal to the
/// planted basis block and — for small groups — to every summary point of
/// the group, emitted twice so the family has `k` centers.
///
/// Large groups get the default direction `e_{d/2+1}`; small groups get a
/// null-space direction supported on the axes outside the basis block
/// (small groups have fewer points than free axes, so one always exists).
/// Every instance point then sits at squared distance exactly 2 from its
/// subspace's center, whatever the summary was.
pub fn orthogonal_centers(
    inst: &SubspaceInstance,
    part: &AnchorPartition,
) -> Result<CenterSet, HardGenError> {
    check_partition(inst, part)?;
    let d = inst.d();
    let free = d - d / 2;
    let mut coords = Vec::new();
    for g in 0..inst.subspace_count() {
        let mut tail = vec![0.0; d];
        if part.is_small(g) && !part.group(g).is_empty() {
            // Constrain only the free axes: the head of the direction is
            // zero by construction, so each summary point contributes one
            // linear constraint on the free block.
            let rows: Vec<Vec<f64>> = part
                .group(g)
                .iter()
                .map(|&i| part.tail(i)[d / 2..].to_vec())
                .collect();
            let x = null_space_direction(&rows, free).ok_or(HardGenError::NoOrthogonalDirection {
                group: g,
                size: part.group(g).len(),
            })?;
            tail[d / 2..].copy_from_slice(&x);
        } else {
            tail[default_direction(d)] = 1.0;
        }
        let center = embed_center(inst, g, &tail);
        coords.extend_from_slice(&center);
        coords.extend_from_slice(&center);
    }
    Ok(CenterSet::new(inst.ambient_dim(), coords)?)
}

/// Outcome of the aligned-pair search for one small group.
#[derive(Debug, Clone, Copy)]
pub struct GroupAlignment {
    /// 0-based subspace index.
    pub group: usize,
    /// Number of summary points in the group.
    pub size: usize,
    /// Cost of the group's summary points against the antipodal pair.
    pub lhs: f64,
    /// The guaranteed ceiling: the group's plain weight term minus the
    /// alignment gain `min{1, z/2}·2·Σ w·base^{z/2−1}·‖p̃‖/√|S_j|`.
    pub rhs: f64,
    /// How many random restarts were needed (0 means the deterministic
    /// all-ones start already validated).
    pub restarts: u32,
}

/// Validation record for every small group of an [`antipodal_centers`]
/// run.
#[derive(Debug, Clone)]
pub struct AlignmentReport {
    pub groups: Vec<GroupAlignment>,
    pub all_valid: bool,
}

const ALIGNMENT_RESTARTS: u32 = 64;
const ALIGNMENT_SWEEPS: usize = 100;

/// Second certificate family: for each small group, an antipodal unit pair
/// `±v` on the basis axes aligned with the group's summary points; large
/// groups reuse the default orthogonal direction twice.
///
/// The pair is found by seeded alternating maximization of
/// `Σ w·base^{z/2−1}·|⟨p̃, v⟩|` and is accepted only once the small-group
/// cost ceiling (the `rhs` of [`GroupAlignment`]) is verified directly; if
/// no restart validates, the op fails loudly rather than weaken the
/// certificate. `z` is taken from the partition.
pub fn antipodal_centers(
    inst: &SubspaceInstance,
    part: &AnchorPartition,
    seed: u64,
) -> Result<(CenterSet, AlignmentReport), HardGenError> {
    check_partition(inst, part)?;
    let d = inst.d();
    let z = part.z();
    let mut coords = Vec::new();
    let mut reports = Vec::new();
    for g in 0..inst.subspace_count() {
        if !part.is_small(g) {
            let mut tail = vec![0.0; d];
            tail[default_direction(d)] = 1.0;
            let center = embed_center(inst, g, &tail);
            coords.extend_from_slice(&center);
            coords.extend_from_slice(&center);
            continue;
        }
        let members = part.group(g);
        if members.is_empty() {
            let mut tail = vec![0.0; d];
            tail[default_direction(d)] = 1.0;
            coords.extend_from_slice(&embed_center(inst, g, &tail));
            let neg_tail: Vec<f64> = tail.iter().map(|x| -x).collect();
            coords.extend_from_slice(&embed_center(inst, g, &neg_tail));
            reports.push(GroupAlignment {
                group: g,
                size: 0,
                lhs: 0.0,
                rhs: 0.0,
                restarts: 0,
            });
            continue;
        }

        // Per-point invariants of the search: weight, tail, tail norm, and
        // base = ‖p̃‖² + 1 + Δ², whose (z/2−1)-th power weights alignment.
        let data: Vec<(f64, &[f64], f64, f64)> = members
            .iter()
            .map(|&i| {
                let tail = part.tail(i);
                let norm_sq: f64 = tail.iter().map(|v| v * v).sum();
                let base = norm_sq + 1.0 + part.delta(i) * part.delta(i);
                (part.weight(i), tail, norm_sq.sqrt(), base)
            })
            .collect();
        let alignment_gain: f64 = data
            .iter()
            .map(|&(w, _, norm, base)| w * base.powf(z / 2.0 - 1.0) * norm)
            .sum();
        let plain_term: f64 = data.iter().map(|&(w, _, _, base)| w * base.powf(z / 2.0)).sum();
        let rhs = plain_term
            - (z / 2.0).min(1.0) * 2.0 * alignment_gain / (members.len() as f64).sqrt();

        let mut rng = ChaCha8Rng::seed_from_u64(
            seed.wrapping_add((g as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        let mut found = None;
        'restarts: for restart in 0..=ALIGNMENT_RESTARTS {
            let mut signs: Vec<f64> = if restart == 0 {
                vec![1.0; data.len()]
            } else {
                (0..data.len())
                    .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    .collect()
            };
            let mut v = signed_sum(&data, &signs, z, d);
            if normalize(&mut v).is_none() {
                v = vec![0.0; d];
                v[0] = 1.0;
            }
            for _ in 0..ALIGNMENT_SWEEPS {
                let next: Vec<f64> = data
                    .iter()
                    .map(|&(_, tail, _, _)| {
                        let dot: f64 = tail.iter().zip(&v).map(|(a, b)| a * b).sum();
                        if dot < 0.0 {
                            -1.0
                        } else {
                            1.0
                        }
                    })
                    .collect();
                if next == signs {
                    break;
                }
                signs = next;
                let mut u = signed_sum(&data, &signs, z, d);
                if normalize(&mut u).is_none() {
                    break;
                }
                v = u;
            }
            let lhs: f64 = data
                .iter()
                .map(|&(w, tail, _, base)| {
                    let minus: f64 = tail.iter().zip(&v).map(|(a, b)| (a - b) * (a - b)).sum();
                    let plus: f64 = tail.iter().zip(&v).map(|(a, b)| (a + b) * (a + b)).sum();
                    // base − ‖p̃‖² − 1 = Δ², so this is min ‖p̃∓v‖² + Δ².
                    let tail_norm_sq: f64 = tail.iter().map(|t| t * t).sum();
                    w * (minus.min(plus) + base - tail_norm_sq - 1.0).powf(z / 2.0)
                })
                .sum();
            let tol = 1e-9 * lhs.abs().max(rhs.abs()).max(1.0);
            if lhs <= rhs + tol {
                found = Some((v, lhs, restart));
                break 'restarts;
            }
        }
        let Some((v, lhs, restarts)) = found else {
            return Err(HardGenError::AlignmentSearchFailed {
                group: g,
                restarts: ALIGNMENT_RESTARTS,
            });
        };
        let plus = embed_center(inst, g, &v);
        let minus_tail: Vec<f64> = v.iter().map(|x| -x).collect();
        let minus = embed_center(inst, g, &minus_tail);
        coords.extend_from_slice(&plus);
        coords.extend_from_slice(&minus);
        reports.push(GroupAlignment {
            group: g,
            size: members.len(),
            lhs,
            rhs,
            restarts,
        });
    }
    let report = AlignmentReport {
        all_valid: true,
        groups: reports,
    };
    Ok((CenterSet::new(inst.ambient_dim(), coords)?, report))
}

fn signed_sum(data: &[(f64, &[f64], f64, f64)], signs: &[f64], z: f64, d: usize) -> Vec<f64> {
    let mut v = vec![0.0; d];
    for (&(w, tail, _, base), &s) in data.iter().zip(signs) {
        let coeff = s * w * base.powf(z / 2.0 - 1.0);
        for (out, t) in v.iter_mut().zip(tail) {
            *out += coeff * t;
        }
    }
    v
}

fn normalize(v: &mut [f64]) -> Option<()> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm <= 1e-300 {
        return None;
    }
    for x in v.iter_mut() {
        *x /= norm;
    }
    Some(())
}

/// Third certificate family: small groups get the antipodal Hadamard pair
/// `±h_ell` (zero-padded to the `d` basis axes), large groups the default
/// direction twice. `ell` is 1-based; the order is the largest power of
/// two at most `d`, so every planted axis sees magnitude exactly `1/√m`.
pub fn hadamard_centers(
    inst: &SubspaceInstance,
    part: &AnchorPartition,
    ell: usize,
) -> Result<CenterSet, HardGenError> {
    check_partition(inst, part)?;
    let d = inst.d();
    let basis = hadamard(largest_hadamard_order(d))?;
    let row = basis.padded_row(ell, d)?;
    let neg_row: Vec<f64> = row.iter().map(|x| -x).collect();
    let mut coords = Vec::new();
    for g in 0..inst.subspace_count() {
        if part.is_small(g) {
            coords.extend_from_slice(&embed_center(inst, g, &row));
            coords.extend_from_slice(&embed_center(inst, g, &neg_row));
        } else {
            let mut tail = vec![0.0; d];
            tail[default_direction(d)] = 1.0;
            let center = embed_center(inst, g, &tail);
            coords.extend_from_slice(&center);
            coords.extend_from_slice(&center);
        }
    }
    Ok(CenterSet::new(inst.ambient_dim(), coords)?)
}

/// Cost of the planted half-basis `e_1..e_{d/2}` against the antipodal
/// unit pair `±v`: each term is `(2 − 2|v_i|)^{z/2}`. `v` must be a unit
/// vector with at least `d/2` coordinates.
pub fn basis_cost_to_antipodal(d: usize, v: &[f64], z: f64) -> f64 {
    (0..d / 2)
        .map(|i| (2.0 - 2.0 * v[i].abs()).max(0.0).powf(z / 2.0))
        .sum()
}

/// Closed-form floor for the half-basis cost against any `k` unit centers
/// closed under negation: `2^{z/2−1}·d − 2^{z/2}·max{1, z/2}·√(kd/2)`.
pub fn basis_cost_lower_bound(d: usize, k: usize, z: f64) -> f64 {
    let pow = 2f64.powf(z / 2.0);
    pow / 2.0 * d as f64 - pow * (z / 2.0).max(1.0) * ((k * d) as f64 / 2.0).sqrt()
}
