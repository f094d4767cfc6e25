//! Eigenvectors, biorthogonal systems and model eigenfunctions for simple
//! spectra.

use std::f64::consts::PI;

use serde::Serialize;

use super::matrix::MatrixRealization;
use super::zeros::ModelZeros;
use crate::herglotz::{kernel_k, kernel_k_tilde, ModelPair};
use crate::numerics::linalg::{self, CMat};
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Debug, Serialize)]
pub struct Eigensystem {
    pub lambdas: Vec<C64>,
    /// `x_n = a_n/(t_n − λ)`: eigenvectors of `L` in `L²(μ)` coordinates.
    pub eigenvectors: Vec<Vec<C64>>,
    /// `g_n = b_n/(t_n − λ̄)`: eigenvectors of the adjoint for `λ̄`.
    pub adjoint_vectors: Vec<Vec<C64>>,
    /// `⟨x_j, g_k⟩_μ`; diagonal entries equal `β'(λ_j)`.
    pub gram: Vec<Vec<C64>>,
    /// Largest `|G_jk|/√|G_jj G_kk|` over `j ≠ k`.
    pub biorthogonality_error: f64,
    /// `h_λ(t_n) = φ(t_n)/(t_n − λ)`.
    pub h_samples: Vec<Vec<C64>>,
    /// `⟨h_j, k_{λ_k}⟩` in `L²(πν)`, with `k̃_{λ̄_k}` for lower half-plane `λ_k`.
    pub clark_gram: Vec<Vec<C64>>,
    pub clark_leakage: f64,
    /// Sine of the angle between the null vector of `L − λ` and `x` (μ-metric).
    pub matrix_collinearity: Vec<f64>,
}

pub fn weighted_inner(x: &[C64], y: &[C64], mu: &[f64]) -> C64 {
    x.iter()
        .zip(y)
        .zip(mu)
        .map(|((a, b), m)| a * b.conj() * *m)
        .sum()
}

fn max_leakage(g: &[Vec<C64>]) -> f64 {
    let n = g.len();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let d = (g[j][j].norm() * g[k][k].norm()).sqrt();
                worst = worst.max(g[j][k].norm() / d);
            }
        }
    }
    worst
}

/// Unit null vector of `L − λ` by SVD.
pub fn matrix_eigenvector(l: &CMat, lambda: C64) -> Vec<C64> {
    let n = l.nrows();
    let mut s = l.clone();
    for i in 0..n {
        s[(i, i)] -= lambda;
    }
    linalg::null_vector(&s).0
}

pub fn eigensystem(
    model: &ModelPair,
    zeros: &ModelZeros,
    matrix: Option<&MatrixRealization>,
) -> Result<Eigensystem> {
    if let Some(c) = zeros.clusters.iter().find(|c| c.multiplicity > 1) {
        return Err(Error::ChainRequired {
            lambda: c.center,
            multiplicity: c.multiplicity,
        });
    }
    let data = &model.data;
    let t = data.base.t();
    let mu = data.base.mu();
    let nu = model.nu();
    let lambdas = zeros.zeros.clone();
    for &l in &lambdas {
        if t.iter()
            .any(|&x| (x - l).norm() <= 1e-12 * (1.0 + l.norm()))
        {
            return Err(Error::NotBiorthogonal(format!(
                "eigenvalue {l} coincides with an atom"
            )));
        }
    }
    let eigenvectors: Vec<Vec<C64>> = lambdas
        .iter()
        .map(|&l| data.a.iter().zip(&t).map(|(a, &x)| a / (x - l)).collect())
        .collect();
    let adjoint_vectors: Vec<Vec<C64>> = lambdas
        .iter()
        .map(|&l| {
            data.b
                .iter()
                .zip(&t)
                .map(|(b, &x)| b / (x - l.conj()))
                .collect()
        })
        .collect();
    let gram: Vec<Vec<C64>> = eigenvectors
        .iter()
        .map(|x| {
            adjoint_vectors
                .iter()
                .map(|g| weighted_inner(x, g, &mu))
                .collect()
        })
        .collect();
    let biorthogonality_error = max_leakage(&gram);

    let h_samples: Vec<Vec<C64>> = lambdas
        .iter()
        .map(|&l| {
            t.iter()
                .map(|&x| model.phi(C64::new(x, 0.0)) / (x - l))
                .collect()
        })
        .collect();
    let scale = super::oracle::spectral_scale(&lambdas);
    let kernels: Vec<Vec<C64>> = lambdas
        .iter()
        .map(|&l| {
            t.iter()
                .map(|&x| {
                    let z = C64::new(x, 0.0);
                    if l.im >= -super::zeros::HALF_PLANE_TOL * scale {
                        kernel_k(model, l, z)
                    } else {
                        kernel_k_tilde(model, l.conj(), z)
                    }
                })
                .collect()
        })
        .collect();
    let clark_gram: Vec<Vec<C64>> = h_samples
        .iter()
        .map(|h| {
            kernels
                .iter()
                .map(|k| {
                    h.iter()
                        .zip(k)
                        .zip(&nu)
                        .map(|((a, b), w)| a * b.conj() * *w)
                        .sum::<C64>()
                        * PI
                })
                .collect()
        })
        .collect();
    let clark_leakage = max_leakage(&clark_gram);

    let matrix_collinearity = match matrix {
        Some(m) => lambdas
            .iter()
            .zip(&eigenvectors)
            .map(|(&l, x)| {
                let v = matrix_eigenvector(&m.l, l);
                // sine of the angle, from the projection residual
                let coef = weighted_inner(x, &v, &mu) / weighted_inner(&v, &v, &mu);
                let r: Vec<C64> = x.iter().zip(&v).map(|(a, b)| a - coef * b).collect();
                (weighted_inner(&r, &r, &mu).re / weighted_inner(x, x, &mu).re).sqrt()
            })
            .collect(),
        None => Vec::new(),
    };
    Ok(Eigensystem {
        lambdas,
        eigenvectors,
        adjoint_vectors,
        gram,
        biorthogonality_error,
        h_samples,
        clark_gram,
        clark_leakage,
        matrix_collinearity,
    })
}

/// Model-to-coordinates map `u_m = f(t_m) b_m/(2i√π)`.
pub fn model_coordinates(model: &ModelPair, f_at_atoms: &[C64]) -> Vec<C64> {
    f_at_atoms
        .iter()
        .zip(&model.data.b)
        .map(|(f, b)| f * b / (2.0 * I * PI.sqrt()))
        .collect()
}
