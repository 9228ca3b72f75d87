use coreset_core::CenterSet;

use crate::{OnedError, Sorted1D};

/// Exact optimum of the weighted 1-d k-median problem.
#[derive(Debug, Clone)]
pub struct Kmedian1DSolution {
    /// Minimal total cost Σ w(p)·|p − nearest center|.
    pub opt: f64,
    /// Optimal centers in ascending order (weighted medians of the clusters).
    pub centers: CenterSet,
    /// Start index of each cluster; cluster t covers `[starts[t],
    /// starts[t+1])` (the last cluster runs to the end of the set).
    pub starts: Vec<usize>,
}

/// Weighted one-median cost of the inclusive index range, 0 for a
/// zero-weight range.
fn cluster_cost(s1: &Sorted1D, lo: usize, hi: usize) -> f64 {
    if s1.range_weight(lo, hi) <= 0.0 {
        return 0.0;
    }
    s1.one_median_range(lo, hi)
        .map(|(_, c)| c)
        .unwrap_or(0.0)
}

/// Exact weighted 1-d k-median via interval dynamic programming.
///
/// In one dimension every optimal solution partitions the sorted points into
/// k contiguous clusters, each served by a weighted median of the cluster.
/// The DP layer for t clusters is computed by divide and conquer over the
/// right endpoint: the optimal split position is monotone in the endpoint,
/// so each layer costs O(n log n) cluster-cost queries, each O(log n) via
/// prefix sums. Total O(k·n·log²n).
///
/// If k reaches the number of distinct coordinates the optimum is 0 and the
/// distinct coordinates themselves are returned as centers.
pub fn exact_kmedian_1d(s1: &Sorted1D, k: usize) -> Result<Kmedian1DSolution, OnedError> {
    if k == 0 {
        return Err(OnedError::BadK);
    }
    if s1.is_empty() {
        return Err(OnedError::Empty);
    }
    let n = s1.len();

    // Runs of identical coordinates; k ≥ #distinct means cost 0.
    let mut run_starts = vec![0usize];
    for i in 1..n {
        if s1.coord(i) != s1.coord(i - 1) {
            run_starts.push(i);
        }
    }
    if k >= run_starts.len() {
        let coords: Vec<f64> = run_starts.iter().map(|&i| s1.coord(i)).collect();
        return Ok(Kmedian1DSolution {
            opt: 0.0,
            centers: CenterSet::new(1, coords)?,
            starts: run_starts,
        });
    }

    // dp[j] = optimal cost of covering the first j points with the current
    // number of clusters; split[t][j] records the argmin split position.
    let mut dp_prev: Vec<f64> = (0..=n)
        .map(|j| if j == 0 { 0.0 } else { f64::INFINITY })
        .collect();
    let mut dp_cur = vec![f64::INFINITY; n + 1];
    let mut splits: Vec<Vec<u32>> = Vec::with_capacity(k);

    for _t in 1..=k {
        let mut split_t = vec![0u32; n + 1];
        dp_cur[0] = dp_prev[0];
        if n > 0 {
            solve_layer(s1, &dp_prev, &mut dp_cur, &mut split_t, 1, n, 0, n);
        }
        splits.push(split_t);
        std::mem::swap(&mut dp_prev, &mut dp_cur);
    }
    let opt = dp_prev[n];

    // Recover cluster ranges from the recorded splits.
    let mut starts = Vec::with_capacity(k);
    let mut end = n;
    for t in (0..k).rev() {
        let s = splits[t][end] as usize;
        if s < end {
            starts.push(s);
        }
        end = s;
    }
    starts.reverse();
    debug_assert!(!starts.is_empty() && starts[0] == 0);

    let mut centers = Vec::with_capacity(starts.len());
    for (t, &lo) in starts.iter().enumerate() {
        let hi = if t + 1 < starts.len() {
            starts[t + 1] - 1
        } else {
            n - 1
        };
        let (m, _) = s1.one_median_range(lo, hi)?;
        centers.push(s1.coord(m));
    }
    centers.dedup();

    Ok(Kmedian1DSolution {
        opt,
        centers: CenterSet::new(1, centers)?,
        starts,
    })
}

/// Divide-and-conquer DP layer: fills `dp_cur[j] = min_s dp_prev[s] +
/// cost(s, j-1)` for `j ∈ [jlo, jhi]`, restricting the split search to
/// `[slo, shi]` (valid because the argmin is monotone in `j`).
#[allow(clippy::too_many_arguments)]
fn solve_layer(
    s1: &Sorted1D,
    dp_prev: &[f64],
    dp_cur: &mut [f64],
    split: &mut [u32],
    jlo: usize,
    jhi: usize,
    slo: usize,
    shi: usize,
) {
    if jlo > jhi {
        return;
    }
    let jm = jlo + (jhi - jlo) / 2;
    let mut best = (f64::INFINITY, slo);
    for s in slo..=shi.min(jm) {
        if dp_prev[s].is_infinite() {
            continue;
        }
        let c = if s < jm {
            cluster_cost(s1, s, jm - 1)
        } else {
            0.0
        };
        let total = dp_prev[s] + c;
        if total < best.0 {
            best = (total, s);
        }
    }
    dp_cur[jm] = best.0;
    split[jm] = best.1 as u32;
    if jm > jlo {
        solve_layer(s1, dp_prev, dp_cur, split, jlo, jm - 1, slo, best.1);
    }
    if jm < jhi {
        solve_layer(s1, dp_prev, dp_cur, split, jm + 1, jhi, best.1, shi);
    }
}
