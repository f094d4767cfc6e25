//! Reproducing kernels of the model space and the Clark transform.

use std::f64::consts::PI;

use super::clark::ClarkMeasure;
use super::model::ModelPair;
use crate::{Error, Result, C64};

fn near(a: C64, b: C64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm())
}

/// `k_λ(z) = (1 − conj Θ(λ) Θ(z))/(z − λ̄)`, with the removable singularity
/// at `z = λ̄` filled in by `−conj Θ(λ) Θ'(z)`.
pub fn kernel_k(model: &ModelPair, lambda: C64, z: C64) -> C64 {
    let tl = model.theta(lambda).conj();
    if near(z, lambda.conj()) {
        return -tl * model.theta_prime(z);
    }
    (1.0 - tl * model.theta(z)) / (z - lambda.conj())
}

/// `k̃_λ(z) = (Θ(z) − Θ(λ))/(z − λ)`.
pub fn kernel_k_tilde(model: &ModelPair, lambda: C64, z: C64) -> C64 {
    if near(z, lambda) {
        return model.theta_prime(z);
    }
    (model.theta(z) - model.theta(lambda)) / (z - lambda)
}

/// `π Σ f_m conj(g_m) σ_m`, the inner product of `L²(πσ_ζ)` on atom samples.
pub fn clark_inner(weights: &[f64], f: &[C64], g: &[C64]) -> C64 {
    f.iter()
        .zip(g)
        .zip(weights)
        .map(|((a, b), w)| a * b.conj() * *w)
        .sum::<C64>()
        * PI
}

/// `(U_ζ u)(z) = √π (ζ − Θ(z)) Σ_m u_m σ_m/(t'_m − z)`.
pub struct ClarkTransform<'a> {
    pub clark: &'a ClarkMeasure,
    pub model: &'a ModelPair,
    pub u: Vec<C64>,
}

pub fn clark_transform<'a>(
    clark: &'a ClarkMeasure,
    model: &'a ModelPair,
    u: Vec<C64>,
) -> Result<ClarkTransform<'a>> {
    if clark.p > 0.0 {
        return Err(Error::MassPresent { p: clark.p });
    }
    if u.len() != clark.atoms.len() {
        return Err(Error::BadParameters(format!(
            "{} coefficients for {} atoms",
            u.len(),
            clark.atoms.len()
        )));
    }
    Ok(ClarkTransform { clark, model, u })
}

impl ClarkTransform<'_> {
    pub fn eval(&self, z: C64) -> C64 {
        let sp = PI.sqrt();
        let zeta = self.clark.zeta;
        // at an atom the factor (ζ − Θ)/(t' − z) tends to Θ'(t')
        if let Some(m) = self
            .clark
            .atoms
            .iter()
            .position(|&t| near(C64::new(t, 0.0), z))
        {
            let t = C64::new(self.clark.atoms[m], 0.0);
            let diff = zeta - self.model.theta(z);
            let mut rest = C64::new(0.0, 0.0);
            for (k, (&tk, &w)) in self.clark.atoms.iter().zip(&self.clark.weights).enumerate() {
                if k != m {
                    rest += self.u[k] * w / (tk - z);
                }
            }
            return sp
                * (self.model.theta_prime(t) * self.u[m] * self.clark.weights[m] + diff * rest);
        }
        let s: C64 = self
            .clark
            .atoms
            .iter()
            .zip(&self.clark.weights)
            .zip(&self.u)
            .map(|((&t, &w), &u)| u * w / (t - z))
            .sum();
        sp * (zeta - self.model.theta(z)) * s
    }
}
