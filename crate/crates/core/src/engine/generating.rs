//! Generating function of a point set: the element of the model space that
//! vanishes on all but one point, times `(z − λ₀)`.

use serde::Serialize;

use crate::herglotz::ModelPair;
use crate::numerics::linalg::{self, CMat};
use crate::{Error, Result, C64};

/// Second-smallest singular value below this fraction of the largest marks a
/// kernel of dimension two or more.
pub const MINIMALITY_TOL: f64 = 1e-10;

/// `f(z) = (1 + Θ(z)) Σ_m c_m/(z − t_m)` expands `f` in the kernels `k_{t_m}`
/// at the poles; `φ_Λ = (z − λ₀) f`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratingFunction {
    pub points: Vec<C64>,
    pub lambda0: C64,
    pub coefficients: Vec<C64>,
    /// `σ_max / σ_{N−1}` of the interpolation matrix.
    pub condition: f64,
    /// Largest `|Σ c_m/(λ − t_m)|` over `Λ ∖ {λ₀}` relative to `Σ |c_m/(λ − t_m)|`.
    pub vanishing_residual: f64,
    #[serde(skip)]
    poles: Vec<f64>,
}

pub fn generating_function(
    model: &ModelPair,
    points: &[C64],
    lambda0: usize,
) -> Result<GeneratingFunction> {
    let t = model.poles().to_vec();
    let n = t.len();
    if points.len() != n {
        return Err(Error::BadParameters(format!(
            "{} points for a {n}-dimensional model space",
            points.len()
        )));
    }
    if lambda0 >= n {
        return Err(Error::BadParameters(format!(
            "lambda0 index {lambda0} out of range"
        )));
    }
    let rest: Vec<C64> = points
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != lambda0)
        .map(|(_, &z)| z)
        .collect();
    let m = CMat::from_fn(rest.len(), n, |i, k| 1.0 / (rest[i] - t[k]));
    let s = linalg::singular_values(&m);
    let top = s.first().copied().unwrap_or(1.0);
    let (coefficients, condition) = if n == 1 {
        (vec![C64::new(1.0, 0.0)], 1.0)
    } else {
        let (v, _, second) = linalg::null_vector(&m);
        // second-smallest right singular value of the padded square system
        let s_low = s.last().copied().unwrap_or(0.0);
        if second <= MINIMALITY_TOL * top || s_low <= MINIMALITY_TOL * top {
            return Err(Error::NotMinimal(format!(
                "interpolation matrix has a kernel of dimension > 1 (singular values {s:?})"
            )));
        }
        (v, top / s_low)
    };
    let vanishing_residual = rest
        .iter()
        .map(|&l| {
            let terms: Vec<C64> = coefficients
                .iter()
                .zip(&t)
                .map(|(c, &x)| c / (l - x))
                .collect();
            let s: C64 = terms.iter().sum();
            let a: f64 = terms.iter().map(|z| z.norm()).sum();
            s.norm() / a
        })
        .fold(0.0, f64::max);
    Ok(GeneratingFunction {
        points: points.to_vec(),
        lambda0: points[lambda0],
        coefficients,
        condition,
        vanishing_residual,
        poles: t,
    })
}

impl GeneratingFunction {
    pub fn eval(&self, model: &ModelPair, z: C64) -> C64 {
        // (1 + Θ)/(z − t_m) stays finite at t_m: 1 + Θ = 2i(t_k − z)/D locally
        let k = model.beta.nearest_pole(z);
        let (d, s) = model.i_plus_rho_local(z);
        let one_plus_theta_over = 2.0 * C64::new(0.0, 1.0) / d; // (1 + Θ)/s
        let mut acc = C64::new(0.0, 0.0);
        for (m, (&c, &x)) in self.coefficients.iter().zip(&self.poles).enumerate() {
            if m == k {
                // (1 + Θ)/(z − t_k) = −(1 + Θ)/s
                acc -= c * one_plus_theta_over;
            } else {
                acc += c * one_plus_theta_over * s / (z - x);
            }
        }
        (z - self.lambda0) * acc
    }

    /// Worst relative spread of `φ_Λ/φ` over the sample points (zero when
    /// `φ_Λ` is proportional to `φ`).
    pub fn proportionality_residual(&self, model: &ModelPair, samples: &[C64]) -> f64 {
        let ratios: Vec<C64> = samples
            .iter()
            .map(|&z| self.eval(model, z) / model.phi(z))
            .collect();
        let r0 = ratios[0];
        ratios
            .iter()
            .map(|r| (r - r0).norm() / r0.norm())
            .fold(0.0, f64::max)
    }
}
