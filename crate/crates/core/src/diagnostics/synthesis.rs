//! Mixed systems `{x_n}_{J₁} ∪ {g_n}_{J₂}` built from an eigenvector family
//! and its biorthogonal partner.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::Eigensystem;
use crate::numerics::linalg::{self, CMat};
use crate::{Error, Result, C64};

/// Exhaustive enumeration up to this many eigenvalues.
pub const EXHAUSTIVE_LIMIT: usize = 12;
pub const DEFAULT_BUDGET: usize = 10_000;
const BIORTHOGONAL_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct SynthesisDefect {
    pub j1: Vec<usize>,
    pub j2: Vec<usize>,
    /// Smallest singular value of the matrix of unit columns, in `[0, 1]`.
    pub sigma_min: f64,
    /// Condition number of the Gram matrix of the columns.
    pub gram_condition: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionSweep {
    pub worst: SynthesisDefect,
    pub best_sigma_min: f64,
    pub evaluated: usize,
    pub exhaustive: bool,
}

/// Unit columns in the `μ`-metric, rows scaled by `√μ_n` so that the
/// Euclidean geometry of the matrix is the `L²(μ)` geometry.
pub struct SynthesisBasis {
    f: Vec<Vec<C64>>,
    g: Vec<Vec<C64>>,
}

impl SynthesisBasis {
    pub fn new(es: &Eigensystem, mu: &[f64]) -> Result<Self> {
        let n = es.lambdas.len();
        if n != mu.len() {
            return Err(Error::NotBiorthogonal(format!(
                "{n} eigenvectors for a {}-dimensional space",
                mu.len()
            )));
        }
        let unit = |v: &[C64]| -> Vec<C64> {
            let scaled: Vec<C64> = v.iter().zip(mu).map(|(x, m)| x * m.sqrt()).collect();
            let norm = scaled.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            scaled.iter().map(|x| x / norm).collect()
        };
        let f: Vec<Vec<C64>> = es.eigenvectors.iter().map(|v| unit(v)).collect();
        let g: Vec<Vec<C64>> = es.adjoint_vectors.iter().map(|v| unit(v)).collect();
        for j in 0..n {
            // ⟨f_j, g_j⟩ must be invertible to normalize the pair
            let d: C64 = f[j].iter().zip(&g[j]).map(|(a, b)| a * b.conj()).sum();
            if d.norm() <= BIORTHOGONAL_TOL {
                return Err(Error::NotBiorthogonal(format!(
                    "pairing of eigenvector {j} with its partner vanishes ({:e})",
                    d.norm()
                )));
            }
        }
        Ok(SynthesisBasis { f, g })
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    /// `use_adjoint[j]` selects `g_j` instead of `f_j`.
    pub fn defect(&self, use_adjoint: &[bool]) -> SynthesisDefect {
        let n = self.len();
        let m = CMat::from_fn(n, n, |i, j| {
            if use_adjoint[j] {
                self.g[j][i]
            } else {
                self.f[j][i]
            }
        });
        let s = linalg::singular_values(&m);
        let (top, low) = (s[0], s[n - 1]);
        let (j1, j2): (Vec<usize>, Vec<usize>) = (0..n).partition(|&j| !use_adjoint[j]);
        SynthesisDefect {
            j1,
            j2,
            sigma_min: low,
            gram_condition: if low > 0.0 {
                (top / low).powi(2)
            } else {
                f64::INFINITY
            },
        }
    }
}

pub fn synthesis_defect(es: &Eigensystem, mu: &[f64], j2: &[usize]) -> Result<SynthesisDefect> {
    let basis = SynthesisBasis::new(es, mu)?;
    let mut mask = vec![false; basis.len()];
    for &j in j2 {
        if j >= mask.len() {
            return Err(Error::BadParameters(format!(
                "index {j} outside the eigensystem"
            )));
        }
        mask[j] = true;
    }
    Ok(basis.defect(&mask))
}

/// Worst partition: all `2^N` for `N ≤ 12`, otherwise `budget` seeded random ones.
pub fn enumerate_partitions(
    es: &Eigensystem,
    mu: &[f64],
    budget: usize,
    seed: u64,
) -> Result<PartitionSweep> {
    let basis = SynthesisBasis::new(es, mu)?;
    let n = basis.len();
    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let masks: Vec<Vec<bool>> = if exhaustive {
        (0..1u32 << n)
            .map(|bits| (0..n).map(|j| bits >> j & 1 == 1).collect())
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..budget.max(1))
            .map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect())
            .collect()
    };
    let defects: Vec<SynthesisDefect> = masks.par_iter().map(|m| basis.defect(m)).collect();
    let best_sigma_min = defects.iter().map(|d| d.sigma_min).fold(0.0, f64::max);
    let evaluated = defects.len();
    let worst = defects
        .into_iter()
        .min_by(|a, b| a.sigma_min.total_cmp(&b.sigma_min))
        .expect("at least one partition");
    Ok(PartitionSweep {
        worst,
        best_sigma_min,
        evaluated,
        exhaustive,
    })
}
