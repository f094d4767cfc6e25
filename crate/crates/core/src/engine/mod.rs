//! Matrix realization, dense oracle spectrum, zeros of the generating
//! function and the structures built on them.

pub mod chain;
pub mod eigensystem;
pub mod generating;
pub mod matrix;
pub mod oracle;
pub mod structure;
pub mod zeros;

pub use chain::{root_chain, ChainReport};
pub use eigensystem::{eigensystem, Eigensystem};
pub use generating::{generating_function, GeneratingFunction};
pub use matrix::{build_matrix, build_matrix_rank_n, MatrixRealization, Route, RoutePreference};
pub use oracle::{oracle_spectrum, OracleSpectrum};
pub use structure::{adjoint_check, adjoint_data, gauge_check, shift_identity};
pub use zeros::{phi_zeros, ModelZeros};

use serde::Serialize;

use crate::herglotz::{build_model, Delta};
use crate::numerics::match_spectra;
use crate::spectral_data::RankOneData;
use crate::{Result, C64};

/// Matching tolerance relative to `max(1, spectral radius)`.
pub const MATCH_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct JordanEntry {
    pub lambda: C64,
    pub algebraic_multiplicity: usize,
    pub blocks: Vec<usize>,
    /// Multiplicity of the matching zero of the generating function.
    pub zero_multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumResult {
    pub route: Route,
    pub oracle: Vec<C64>,
    pub model_zeros: Vec<C64>,
    /// Largest distance in the optimal matching of the two multisets.
    pub match_residual: f64,
    pub hausdorff: f64,
    pub spectral_scale: f64,
    pub jordan: Vec<JordanEntry>,
    pub inverse_residual: f64,
}

impl SpectrumResult {
    pub fn matches(&self, rel_tol: f64) -> bool {
        self.match_residual <= rel_tol * self.spectral_scale
    }
}

/// Oracle and model spectra of one instance with their matching.
pub fn compute_spectrum(
    data: &RankOneData,
    route: RoutePreference,
    delta: Delta,
) -> Result<SpectrumResult> {
    let model = build_model(data, delta)?;
    let m = build_matrix(data, route)?;
    let oracle = oracle_spectrum(&m)?;
    let zeros = phi_zeros(&model)?;
    let sm = match_spectra(&oracle.eigenvalues, &zeros.zeros);
    let jordan = oracle
        .clusters
        .iter()
        .map(|c| JordanEntry {
            lambda: c.center,
            algebraic_multiplicity: c.algebraic_multiplicity,
            blocks: c.jordan_blocks.clone(),
            zero_multiplicity: zeros
                .clusters
                .iter()
                .min_by(|a, b| {
                    (a.center - c.center)
                        .norm()
                        .total_cmp(&(b.center - c.center).norm())
                })
                .map(|z| z.multiplicity)
                .unwrap_or(0),
        })
        .collect();
    Ok(SpectrumResult {
        route: m.route,
        spectral_scale: oracle.spectral_scale,
        oracle: oracle.eigenvalues,
        model_zeros: zeros.zeros,
        match_residual: sm.max_residual,
        hausdorff: sm.hausdorff,
        jordan,
        inverse_residual: m.inverse_residual(),
    })
}
