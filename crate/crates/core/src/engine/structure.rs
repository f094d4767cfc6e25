//! Structural identities of the matrix realization: adjoints, gauge
//! invariance, the shift law and conjugation symmetry.

use serde::Serialize;

use super::matrix::{build_matrix_rank_n, shifted_kappa, shifted_operator, RoutePreference};
use super::oracle::{oracle_spectrum_of, spectral_scale};
use crate::numerics::linalg::{self, CMat};
use crate::numerics::match_spectra;
use crate::spectral_data::{validate, validate_rank_n, RankNData, RankOneData};
use crate::{Error, Result, C64};

/// `(b, a, κ̄)`, defined when the adjoint admissibility condition holds.
pub fn adjoint_data(data: &RankOneData) -> Result<RankOneData> {
    if !validate(data).condition_a_star {
        return Err(Error::Admissibility("adjoint condition fails".into()));
    }
    data.adjoint()
}

pub fn adjoint_data_rank_n(data: &RankNData) -> Result<RankNData> {
    if !validate_rank_n(data).condition_a_star {
        return Err(Error::Admissibility("adjoint condition fails".into()));
    }
    Ok(data.adjoint())
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    /// `‖L(b, a, κ*) − L♯‖_F / ‖L‖_F`, `L♯` the μ-weighted adjoint.
    pub matrix_residual: f64,
    /// Matched distance between `eig(L(b, a, κ*))` and `conj(eig(L))`,
    /// relative to `max(1, spectral radius)`.
    pub spectrum_residual: f64,
}

pub fn adjoint_check(data: &RankNData) -> Result<AdjointReport> {
    let adj = adjoint_data_rank_n(data)?;
    let m = build_matrix_rank_n(data, RoutePreference::Auto)?;
    let ma = build_matrix_rank_n(&adj, RoutePreference::Auto)?;
    let sharp = m.weighted_adjoint();
    let matrix_residual = linalg::frobenius(&(&ma.l - &sharp)) / linalg::frobenius(&m.l);
    let e = oracle_spectrum_of(&m.l)?.eigenvalues;
    let ea = oracle_spectrum_of(&ma.l)?.eigenvalues;
    let conj: Vec<C64> = e.iter().map(|z| z.conj()).collect();
    let spectrum_residual = match_spectra(&ea, &conj).max_residual / spectral_scale(&e);
    Ok(AdjointReport {
        matrix_residual,
        spectrum_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    /// `‖L' − L‖_F / ‖L‖_F` for the gauged data.
    pub residual: f64,
    pub spectrum_residual: f64,
}

/// Compares `L(a, b, κ)` with `L(aτ₁⁻¹, bτ₂, τ₂*κτ₁⁻¹)`.
pub fn gauge_check(data: &RankNData, tau1: &CMat, tau2: &CMat) -> Result<GaugeReport> {
    for tau in [tau1, tau2] {
        let s = linalg::singular_values(tau);
        let (top, low) = (s[0], *s.last().expect("nonempty"));
        if low <= 1e-12 * top {
            return Err(Error::SingularGauge(low));
        }
    }
    let inv1 = linalg::inverse(tau1).map_err(|_| Error::SingularGauge(0.0))?;
    let gauged = RankNData {
        base: data.base.clone(),
        a: &data.a * &inv1,
        b: &data.b * tau2,
        kappa: tau2.adjoint() * &data.kappa * &inv1,
    };
    let m = build_matrix_rank_n(data, RoutePreference::Auto)?;
    let g = build_matrix_rank_n(&gauged, RoutePreference::Auto)?;
    let residual = linalg::frobenius(&(&g.l - &m.l)) / linalg::frobenius(&m.l);
    let e = oracle_spectrum_of(&m.l)?.eigenvalues;
    let eg = oracle_spectrum_of(&g.l)?.eigenvalues;
    Ok(GaugeReport {
        residual,
        spectrum_residual: match_spectra(&e, &eg).max_residual / spectral_scale(&e),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftReport {
    pub lambda: C64,
    /// Matched distance between `eig(L(A − λ, a, b, κ(λ))) + λ` and `eig(L)`,
    /// relative to `max(1, spectral radius)`.
    pub spectrum_residual: f64,
    /// `max |β(λ) − κ(λ)|` (rank one only), relative to `1 + |β(λ)|`.
    pub kappa_law_residual: Option<f64>,
}

pub fn shift_identity(data: &RankNData, lambda: C64) -> Result<ShiftReport> {
    let m = build_matrix_rank_n(data, RoutePreference::Auto)?;
    let (ls, _) = shifted_operator(data, lambda)?;
    let e = oracle_spectrum_of(&m.l)?.eigenvalues;
    let es: Vec<C64> = oracle_spectrum_of(&ls)?
        .eigenvalues
        .into_iter()
        .map(|z| z + lambda)
        .collect();
    let kappa_law_residual = if data.rank() == 1 {
        let r1 = RankOneData::new(
            data.base.clone(),
            data.a.column(0).iter().copied().collect(),
            data.b.column(0).iter().copied().collect(),
            data.kappa[(0, 0)],
        )?;
        let beta = crate::herglotz::ModelPair::new_unchecked(&r1, crate::herglotz::Delta::Auto)
            .beta
            .eval_unguarded(lambda);
        let k = shifted_kappa(data, lambda)[(0, 0)];
        Some((beta - k).norm() / (1.0 + beta.norm()))
    } else {
        None
    };
    Ok(ShiftReport {
        lambda,
        spectrum_residual: match_spectra(&e, &es).max_residual / spectral_scale(&e),
        kappa_law_residual,
    })
}

/// Matched distance between a spectrum and its conjugate.
pub fn conjugation_asymmetry(eigs: &[C64]) -> f64 {
    let conj: Vec<C64> = eigs.iter().map(|z| z.conj()).collect();
    match_spectra(eigs, &conj).max_residual / spectral_scale(eigs)
}

/// Strong real type: every eigenvalue real within `tol·max(1, spectral radius)`.
pub fn is_real_spectrum(eigs: &[C64], tol: f64) -> bool {
    let s = spectral_scale(eigs);
    eigs.iter().all(|z| z.im.abs() <= tol * s)
}
