//! Spectrum from the model: zeros of `φ` in the closed upper half-plane and
//! conjugated zeros of `φ̃` in the open upper half-plane.

use serde::Serialize;

use crate::herglotz::{CauchyRepresentation, ModelPair};
use crate::numerics::{cluster_points, Poly};
use crate::{Result, C64};

use super::oracle::{spectral_scale, CLUSTER_RADIUS};

/// Half-plane threshold relative to the spectral scale.
pub const HALF_PLANE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct ZeroCluster {
    pub center: C64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelZeros {
    /// Spectrum with multiplicity.
    pub zeros: Vec<C64>,
    pub clusters: Vec<ZeroCluster>,
    /// Zeros of `φ` with `Im ≥ −τ`.
    pub from_phi: Vec<C64>,
    /// Conjugates of zeros of `φ̃` with `Im > τ`.
    pub from_phi_tilde: Vec<C64>,
}

/// Newton refinement on the Cauchy form; a step is kept only if it reduces
/// `|F|` and stays small.
pub fn polish(f: &CauchyRepresentation, z0: C64) -> C64 {
    let mut z = z0;
    let Ok(mut fz) = f.eval(z) else { return z0 };
    for _ in 0..8 {
        let d = f.derivative(z);
        if d == C64::new(0.0, 0.0) {
            break;
        }
        let step = fz / d;
        if step.norm() > 1e-3 * (1.0 + z.norm()) {
            break;
        }
        let zn = z - step;
        match f.eval(zn) {
            Ok(fn_) if fn_.norm() < fz.norm() => {
                z = zn;
                fz = fn_;
            }
            _ => break,
        }
        if step.norm() <= 4.0 * f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

fn scaled_roots(p: &Poly, scale: f64, f: &CauchyRepresentation) -> Result<Vec<C64>> {
    Ok(p.roots()?
        .into_iter()
        .map(|u| polish(f, u * scale))
        .collect())
}

pub fn phi_zeros(model: &ModelPair) -> Result<ModelZeros> {
    let rf = model.rational()?;
    let z_phi = scaled_roots(&rf.p_beta, rf.scale, &model.beta)?;
    let z_tilde = scaled_roots(&rf.p_beta_sharp, rf.scale, &model.beta_sharp)?;
    let scale = spectral_scale(&z_phi);
    let tau = HALF_PLANE_TOL * scale;
    let from_phi: Vec<C64> = z_phi.into_iter().filter(|z| z.im >= -tau).collect();
    let from_phi_tilde: Vec<C64> = z_tilde
        .into_iter()
        .filter(|z| z.im > tau)
        .map(|z| z.conj())
        .collect();
    let zeros: Vec<C64> = from_phi.iter().chain(&from_phi_tilde).copied().collect();
    let clusters = cluster_points(&zeros, CLUSTER_RADIUS * scale)
        .into_iter()
        .map(|c| ZeroCluster {
            center: c.center,
            multiplicity: c.multiplicity(),
        })
        .collect();
    Ok(ModelZeros {
        zeros,
        clusters,
        from_phi,
        from_phi_tilde,
    })
}
