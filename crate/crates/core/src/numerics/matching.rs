//! Optimal one-to-one matching of two point multisets in the plane.

use serde::Serialize;

use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumMatch {
    /// `(i, j)`: `left[i]` is paired with `right[j]`.
    pub pairs: Vec<(usize, usize)>,
    /// Largest paired distance.
    pub max_residual: f64,
    /// Hausdorff distance between the two sets (ignores multiplicity).
    pub hausdorff: f64,
    pub same_size: bool,
}

/// Hungarian assignment on `|left_i − right_j|`. Unequal sizes produce an
/// infinite residual.
pub fn match_spectra(left: &[C64], right: &[C64]) -> SpectrumMatch {
    let hausdorff = hausdorff(left, right);
    if left.len() != right.len() {
        return SpectrumMatch {
            pairs: Vec::new(),
            max_residual: f64::INFINITY,
            hausdorff,
            same_size: false,
        };
    }
    let n = left.len();
    let cost: Vec<Vec<f64>> = left
        .iter()
        .map(|a| right.iter().map(|b| (a - b).norm()).collect())
        .collect();
    let assign = hungarian(&cost);
    let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, assign[i])).collect();
    let max_residual = pairs.iter().map(|&(i, j)| cost[i][j]).fold(0.0, f64::max);
    SpectrumMatch {
        pairs,
        max_residual,
        hausdorff,
        same_size: true,
    }
}

pub fn hausdorff(left: &[C64], right: &[C64]) -> f64 {
    if left.is_empty() && right.is_empty() {
        return 0.0;
    }
    if left.is_empty() || right.is_empty() {
        return f64::INFINITY;
    }
    let directed = |p: &[C64], q: &[C64]| {
        p.iter()
            .map(|a| {
                q.iter()
                    .map(|b| (a - b).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    directed(left, right).max(directed(right, left))
}

/// Minimum-cost perfect assignment for a square cost matrix; returns the
/// column assigned to each row. Potentials formulation, O(n³).
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let inf = f64::INFINITY;
    // 1-based arrays, index 0 is the virtual column
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut ans = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            ans[p[j] - 1] = j - 1;
        }
    }
    ans
}
