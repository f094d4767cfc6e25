//! Dense eigensolve of the matrix realization with clustering and Jordan
//! structure from rank sequences.

use serde::Serialize;

use super::matrix::MatrixRealization;
use crate::numerics::linalg::{self, CMat};
use crate::numerics::{cluster_points, Cluster};
use crate::{Error, Result, C64};

pub const ORACLE_LIMIT: usize = 2048;
/// Cluster radius relative to `max(1, spectral radius)`.
pub const CLUSTER_RADIUS: f64 = 1e-6;
/// Singular values below this fraction of `σ_max` count as zero.
pub const JORDAN_RANK_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct EigenCluster {
    pub center: C64,
    pub algebraic_multiplicity: usize,
    /// Jordan block sizes, descending.
    pub jordan_blocks: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSpectrum {
    pub eigenvalues: Vec<C64>,
    pub clusters: Vec<EigenCluster>,
    pub spectral_scale: f64,
}

pub fn spectral_scale(values: &[C64]) -> f64 {
    values.iter().map(|z| z.norm()).fold(1.0, f64::max)
}

pub fn oracle_spectrum(m: &MatrixRealization) -> Result<OracleSpectrum> {
    oracle_spectrum_of(&m.l)
}

pub fn oracle_spectrum_of(l: &CMat) -> Result<OracleSpectrum> {
    let n = l.nrows();
    if n > ORACLE_LIMIT {
        return Err(Error::EigensolveFailure(format!(
            "dimension {n} exceeds the dense limit {ORACLE_LIMIT}"
        )));
    }
    let eigenvalues = linalg::schur_eigenvalues(l)?;
    let scale = spectral_scale(&eigenvalues);
    let clusters = cluster_points(&eigenvalues, CLUSTER_RADIUS * scale)
        .into_iter()
        .map(|c| jordan_structure(l, &c))
        .collect();
    Ok(OracleSpectrum {
        eigenvalues,
        clusters,
        spectral_scale: scale,
    })
}

/// Block sizes from `r_k = rank((L − λ)^k)`: the number of blocks of size at
/// least `k` is `r_{k−1} − r_k`.
fn jordan_structure(l: &CMat, c: &Cluster) -> EigenCluster {
    let n = l.nrows();
    let m = c.multiplicity();
    if m == 1 {
        return EigenCluster {
            center: c.center,
            algebraic_multiplicity: 1,
            jordan_blocks: vec![1],
        };
    }
    let mut shifted = l.clone();
    for i in 0..n {
        shifted[(i, i)] -= c.center;
    }
    let mut ranks = vec![n];
    let mut power = shifted.clone();
    for k in 1..=m {
        if k > 1 {
            power = &power * &shifted;
        }
        let r = linalg::numerical_rank(&power, JORDAN_RANK_TOL);
        ranks.push(r);
        if n - r >= m {
            break;
        }
    }
    let at_least: Vec<usize> = ranks
        .windows(2)
        .map(|w| w[0].saturating_sub(w[1]))
        .collect();
    let mut blocks = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..at_least[k].saturating_sub(next) {
            blocks.push(k + 1);
        }
    }
    blocks.sort_by(|a, b| b.cmp(a));
    EigenCluster {
        center: c.center,
        algebraic_multiplicity: m,
        jordan_blocks: blocks,
    }
}
