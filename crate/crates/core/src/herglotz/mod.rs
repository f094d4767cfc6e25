//! The model pair `(β, ρ)`, the inner function `Θ`, the generating function
//! `φ`, Clark measures, reproducing kernels and the de Branges pair.

pub mod cauchy;
pub mod clark;
pub mod debranges;
pub mod kernels;
pub mod model;

pub use cauchy::CauchyRepresentation;
pub use clark::{clark_measure, ClarkMeasure};
pub use debranges::{build_debranges, DeBrangesPair};
pub use kernels::{clark_inner, clark_transform, kernel_k, kernel_k_tilde, ClarkTransform};
pub use model::{build_model, Delta, ModelPair, RationalForm, Which};

use crate::C64;

/// Largest `c` with `1 − |Θ(z)| ≥ c·Im z/(|z|² + 1)` over the sample points.
pub fn theta_estimate_constant(model: &ModelPair, points: &[C64]) -> f64 {
    points
        .iter()
        .map(|&z| (1.0 - model.theta(z).norm()) * (z.norm_sqr() + 1.0) / z.im)
        .fold(f64::INFINITY, f64::min)
}
