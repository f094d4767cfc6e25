//! Point mass at infinity of the Clark measure `σ_ζ`.

use serde::Serialize;

use super::growth::log_grid;
use crate::herglotz::ModelPair;
use crate::{Error, Result, C64};

#[derive(Clone, Debug, Serialize)]
pub struct MassReport {
    pub zeta: C64,
    pub theta_at_infinity: C64,
    /// Linear coefficient `p_ζ` of `(ζ + Θ)/(ζ − Θ)`, from the expansion at infinity.
    pub p: f64,
    pub has_mass: bool,
    /// `y·|ζ − Θ(iy)|/2` at the largest sampled `y`: tends to `1/p_ζ` with a
    /// mass and grows linearly without one.
    pub p_est: f64,
    pub y_grid: Vec<f64>,
    pub decay_products: Vec<f64>,
}

/// `ρ = ρ(∞) − S/z + O(z⁻²)` with `S = Σν_n`, so for `ζ = Θ(∞)` one has
/// `(ζ + Θ)/(ζ − Θ) = −i p z + O(1)` with `p = (1 + ρ(∞)²)/S`.
pub fn mass_detect(model: &ModelPair, zeta: C64, tol: f64, y_max: f64) -> Result<MassReport> {
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::BadParameters(format!(
            "|zeta| = {} is not 1",
            zeta.norm()
        )));
    }
    let th = model.theta_at_infinity();
    let has_mass = (zeta - th).norm() <= tol;
    let r = model.rho_at_infinity();
    let s: f64 = model.nu().iter().sum();
    let p = if has_mass { (1.0 + r * r) / s } else { 0.0 };
    let y_grid = log_grid(1.0, y_max.max(10.0), 49);
    let decay_products: Vec<f64> = y_grid
        .iter()
        .map(|&y| y * (zeta - model.theta(C64::new(0.0, y))).norm() / 2.0)
        .collect();
    Ok(MassReport {
        zeta,
        theta_at_infinity: th,
        p,
        has_mass,
        p_est: *decay_products.last().expect("non-empty grid"),
        y_grid,
        decay_products,
    })
}
