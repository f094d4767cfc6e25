//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::DMatrix;

use crate::{Error, Result, C64};

pub type CMat = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m
        .clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn sigma_min(m: &CMat) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn numerical_rank(m: &CMat, rel_tol: f64) -> usize {
    let s = singular_values(m);
    let Some(&top) = s.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * top).count()
}

/// Right singular vectors belonging to the `k` smallest singular values,
/// together with those values (ascending). Short matrices are padded with zero
/// rows so that the full right basis is available.
pub fn smallest_right_singular(m: &CMat, k: usize) -> (Vec<f64>, Vec<Vec<C64>>) {
    let cols = m.ncols();
    let work = if m.nrows() < cols {
        let mut p = CMat::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let mut values = Vec::new();
    let mut vectors = Vec::new();
    for &j in order.iter().take(k) {
        values.push(svd.singular_values[j]);
        vectors.push((0..cols).map(|i| vt[(j, i)].conj()).collect());
    }
    (values, vectors)
}

/// Unit vector spanning the numerical kernel, with the two smallest singular
/// values for diagnosing a non-unique kernel.
pub fn null_vector(m: &CMat) -> (Vec<C64>, f64, f64) {
    let (vals, vecs) = smallest_right_singular(m, 2);
    let second = vals.get(1).copied().unwrap_or(f64::INFINITY);
    (vecs[0].clone(), vals[0], second)
}

/// Adjoint in the weighted inner product `⟨x, y⟩ = Σ x_n conj(y_n) w_n`,
/// i.e. `W⁻¹ Mᴴ W`.
pub fn weighted_adjoint(m: &CMat, w: &[f64]) -> CMat {
    let n = m.nrows();
    CMat::from_fn(n, n, |i, j| m[(j, i)].conj() * (w[j] / w[i]))
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inverse(m: &CMat) -> Result<CMat> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::EigensolveFailure("matrix is numerically singular".into()))
}

/// Eigenvalues of a dense complex matrix by nalgebra's Schur decomposition.
pub fn schur_eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, 10_000)
        .ok_or_else(|| Error::EigensolveFailure("Schur iteration did not converge".into()))?;
    let ev = schur
        .eigenvalues()
        .ok_or_else(|| Error::EigensolveFailure("no eigenvalues from Schur form".into()))?;
    Ok(ev.iter().copied().collect())
}
