use std::f64::consts::PI;

use serde::Serialize;

use super::cauchy::{partial_fraction_numerator, CauchyRepresentation};
use crate::numerics::Poly;
use crate::spectral_data::RankOneData;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Hermite–Biehler pair `E = A − iB` with `A = Π(1 − z/t_n)` and
/// `B/A = Σ ν_n/(t_n − z)`.
#[derive(Clone, Debug, Serialize)]
pub struct DeBrangesPair {
    pub poles: Vec<f64>,
    pub nu: Vec<f64>,
}

pub fn build_debranges(data: &RankOneData) -> DeBrangesPair {
    DeBrangesPair {
        poles: data.base.t(),
        nu: data.rho_weights(),
    }
}

impl DeBrangesPair {
    pub fn a(&self, z: C64) -> C64 {
        self.poles.iter().map(|t| 1.0 - z / t).product()
    }

    /// `B(z) = Σ (ν_n/t_n) Π_{m≠n}(1 − z/t_m)` with prefix/suffix products,
    /// valid at the poles as well.
    pub fn b(&self, z: C64) -> C64 {
        let n = self.poles.len();
        let f: Vec<C64> = self.poles.iter().map(|t| 1.0 - z / t).collect();
        let mut suffix = vec![C64::new(1.0, 0.0); n + 1];
        for k in (0..n).rev() {
            suffix[k] = suffix[k + 1] * f[k];
        }
        let mut prefix = C64::new(1.0, 0.0);
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            acc += prefix * suffix[k + 1] * (self.nu[k] / self.poles[k]);
            prefix *= f[k];
        }
        acc
    }

    pub fn e(&self, z: C64) -> C64 {
        self.a(z) - I * self.b(z)
    }

    /// `E#(z) = conj E(z̄) = A + iB` (both `A` and `B` have real coefficients).
    pub fn e_sharp(&self, z: C64) -> C64 {
        self.a(z) + I * self.b(z)
    }

    /// `E#/E`, equal to `Θ` built with the automatic `δ`.
    pub fn theta(&self, z: C64) -> C64 {
        self.e_sharp(z) / self.e(z)
    }

    /// Reproducing kernel of the de Branges space,
    /// `K_w(z) = (conj E(w) E(z) − conj E#(w) E#(z)) / (2πi(w̄ − z))`.
    pub fn kernel(&self, w: C64, z: C64) -> Result<C64> {
        let den = w.conj() - z;
        if den.norm() <= 1e-12 * (1.0 + z.norm()) {
            return Err(Error::EvaluationAtPole { z, pole: w.re });
        }
        let num = self.e(w).conj() * self.e(z) - self.e_sharp(w).conj() * self.e_sharp(z);
        Ok(num / (2.0 * PI * I * den))
    }

    /// `(A, B)` as polynomials in `u = z/scale`.
    pub fn polynomials(&self, scale: f64) -> (Poly, Poly) {
        let tau: Vec<f64> = self.poles.iter().map(|t| t / scale).collect();
        let zero = vec![C64::new(0.0, 0.0); tau.len()];
        let (a, _) = partial_fraction_numerator(&tau, &zero);
        // B is the numerator of Σ ν_n/(t_n − z), whose constant is Σ ν_n/t_n
        let delta: f64 = self.nu.iter().zip(&self.poles).map(|(v, t)| v / t).sum();
        let rho = CauchyRepresentation::new(
            self.poles.clone(),
            self.nu.iter().map(|&v| C64::new(v, 0.0)).collect(),
            C64::new(delta, 0.0),
        );
        // its degree-N coefficient vanishes exactly
        let b = rho.numerator(scale);
        (a, Poly::new(b.coeffs()[..tau.len()].to_vec()))
    }

    /// Smallest sampled value of `|E(z)| − |E(z̄)|` over the given upper
    /// half-plane points (positive for a Hermite–Biehler function).
    pub fn hermite_biehler_margin(&self, points: &[C64]) -> f64 {
        points
            .iter()
            .map(|&z| self.e(z).norm() - self.e(z.conj()).norm())
            .fold(f64::INFINITY, f64::min)
    }
}
