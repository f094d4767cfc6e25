//! Numerical laboratory for rank-one (and finite-rank) singular perturbations
//! of selfadjoint operators with discrete spectrum.
//!
//! The unperturbed operator is multiplication by `t` in `L²(μ)` for a finite
//! atomic measure `μ = Σ μ_n δ_{t_n}`. A perturbation is described by the
//! triple `(a, b, κ)`. The crate realizes the perturbed operator two ways:
//!
//! * as a dense matrix (inverse of a rank-`n` perturbation of `A⁻¹`), and
//! * through the functional model: the Herglotz functions `β`, `ρ`, the inner
//!   function `Θ = (i − ρ)/(i + ρ)` and the generating function
//!   `φ = β (1 + Θ)/2`, whose zeros are the eigenvalues.
//!
//! On top of both routes it provides Clark measures, reproducing kernels,
//! de Branges pairs, completeness diagnostics and reproductions of explicit
//! constructions (a Volterra example built from `cos(π√z)` and a lacunary
//! incompleteness pipeline).

pub mod diagnostics;
pub mod engine;
pub mod error;
pub mod gallery;
pub mod herglotz;
pub mod io;
pub mod numerics;
pub mod spectral_data;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Crate version embedded in every emitted artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
