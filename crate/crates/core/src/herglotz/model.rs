use serde::{Deserialize, Serialize};

use super::cauchy::CauchyRepresentation;
use crate::numerics::Poly;
use crate::spectral_data::{validate, RankOneData};
use crate::{Error, Result, C64};

/// Largest atom count for which the rational normal form is built.
pub const RATIONAL_LIMIT: usize = 512;

const I: C64 = C64::new(0.0, 1.0);

/// Free real constant of `ρ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Delta {
    /// `δ = Σ ν_n/t_n`, which makes `ρ = Σ ν_n/(t_n − z)`.
    #[default]
    Auto,
    Value(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Beta,
    Rho,
    Theta,
    Phi,
    PhiTilde,
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "beta" => Which::Beta,
            "rho" => Which::Rho,
            "theta" => Which::Theta,
            "phi" => Which::Phi,
            "phi_tilde" | "phi-tilde" => Which::PhiTilde,
            _ => {
                return Err(Error::BadParameters(format!(
                    "unknown model function '{s}'"
                )))
            }
        })
    }
}

/// `β`, `ρ` and the functions derived from them.
#[derive(Clone, Debug)]
pub struct ModelPair {
    pub data: RankOneData,
    pub beta: CauchyRepresentation,
    pub beta_sharp: CauchyRepresentation,
    pub rho: CauchyRepresentation,
    pub delta: f64,
}

/// Pole-local quantities at the atom `k` nearest to `z`, with `s = t_k − z`.
struct Local {
    s: C64,
    n_beta: C64,
    n_beta_sharp: C64,
    n_rho: C64,
    r_beta: (C64, C64),
    r_rho: (C64, C64),
    d: C64,
}

pub fn build_model(data: &RankOneData, delta: Delta) -> Result<ModelPair> {
    let report = validate(data);
    if !report.condition_a {
        return Err(Error::Admissibility(format!(
            "kappa equals sum t^-1 a conj(b) mu (|difference| = {:e} <= {:e})",
            report.witnesses.distance, report.witnesses.threshold
        )));
    }
    Ok(ModelPair::new_unchecked(data, delta))
}

impl ModelPair {
    /// Builds the evaluators without testing admissibility.
    pub fn new_unchecked(data: &RankOneData, delta: Delta) -> ModelPair {
        let t = data.base.t();
        let nu = data.rho_weights();
        let delta = match delta {
            Delta::Value(d) => d,
            Delta::Auto => {
                let order = data.base.abs_order();
                order
                    .iter()
                    .map(|&n| nu[n] / t[n])
                    .collect::<crate::numerics::RealCompensatedSum>()
                    .value()
            }
        };
        let beta = CauchyRepresentation::new(t.clone(), data.beta_weights(), data.kappa);
        let beta_sharp = beta.sharp();
        let rho = CauchyRepresentation::new(
            t,
            nu.iter().map(|&v| C64::new(v, 0.0)).collect(),
            C64::new(delta, 0.0),
        );
        ModelPair {
            data: data.clone(),
            beta,
            beta_sharp,
            rho,
            delta,
        }
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }

    pub fn poles(&self) -> &[f64] {
        &self.beta.poles
    }

    pub fn nu(&self) -> Vec<f64> {
        self.rho.residues.iter().map(|r| r.re).collect()
    }

    fn local(&self, z: C64) -> Local {
        let k = self.beta.nearest_pole(z);
        let s = self.beta.poles[k] - z;
        let r_beta = self.beta.regular_part(k, z);
        let r_beta_sharp = self.beta_sharp.regular_part(k, z);
        let r_rho = self.rho.regular_part(k, z);
        let n_rho = self.rho.residues[k] + s * r_rho.0;
        Local {
            s,
            n_beta: self.beta.residues[k] + s * r_beta.0,
            n_beta_sharp: self.beta_sharp.residues[k] + s * r_beta_sharp.0,
            n_rho,
            r_beta,
            r_rho,
            d: I * s + n_rho,
        }
    }

    pub fn eval(&self, which: Which, z: C64) -> Result<C64> {
        match which {
            Which::Beta => self.beta.eval(z),
            Which::Rho => self.rho.eval(z),
            Which::Theta => Ok(self.theta(z)),
            Which::Phi => Ok(self.phi(z)),
            Which::PhiTilde => Ok(self.phi_tilde(z)),
        }
    }

    /// `Θ = (i − ρ)/(i + ρ)`, continuous through the poles of `ρ`.
    pub fn theta(&self, z: C64) -> C64 {
        let l = self.local(z);
        (I * l.s - l.n_rho) / l.d
    }

    /// `φ = β(1 + Θ)/2 = iβ/(i + ρ)`.
    pub fn phi(&self, z: C64) -> C64 {
        let l = self.local(z);
        I * l.n_beta / l.d
    }

    /// `φ̃ = Θ·conj(φ(z̄)) = iβ#/(i + ρ)`.
    pub fn phi_tilde(&self, z: C64) -> C64 {
        let l = self.local(z);
        I * l.n_beta_sharp / l.d
    }

    /// `i + ρ` up to the factor `t_k − z`: returns `(numerator, s)` with
    /// `i + ρ = numerator/s`.
    pub fn i_plus_rho_local(&self, z: C64) -> (C64, C64) {
        let l = self.local(z);
        (l.d, l.s)
    }

    pub fn theta_prime(&self, z: C64) -> C64 {
        let l = self.local(z);
        let dn_rho = -l.r_rho.0 + l.s * l.r_rho.1;
        let d_prime = -I + dn_rho;
        let num = I * l.s - l.n_rho;
        let num_prime = -I - dn_rho;
        (num_prime * l.d - num * d_prime) / (l.d * l.d)
    }

    pub fn phi_prime(&self, z: C64) -> C64 {
        let l = self.local(z);
        let dn_beta = -l.r_beta.0 + l.s * l.r_beta.1;
        let d_prime = -I - l.r_rho.0 + l.s * l.r_rho.1;
        I * (dn_beta * l.d - l.n_beta * d_prime) / (l.d * l.d)
    }

    /// Logarithmic derivative `φ'/φ` split as `N_β'/N_β − D'/D`.
    pub fn phi_log_derivative(&self, z: C64) -> C64 {
        let l = self.local(z);
        let dn_beta = -l.r_beta.0 + l.s * l.r_beta.1;
        let d_prime = -I - l.r_rho.0 + l.s * l.r_rho.1;
        dn_beta / l.n_beta - d_prime / l.d
    }

    /// `(i + ρ)'/(i + ρ)` in the same local form, used to count poles of `φ`.
    pub fn denominator_log_derivative(&self, z: C64) -> C64 {
        let l = self.local(z);
        let d_prime = -I - l.r_rho.0 + l.s * l.r_rho.1;
        d_prime / l.d
    }

    pub fn beta_at_infinity(&self) -> C64 {
        self.beta.at_infinity()
    }

    pub fn rho_at_infinity(&self) -> f64 {
        self.rho.at_infinity().re
    }

    pub fn theta_at_infinity(&self) -> C64 {
        let r = self.rho_at_infinity();
        (I - r) / (I + r)
    }

    /// Geometric mean of `|t_n|`, the variable scale of the rational form.
    pub fn scale(&self) -> f64 {
        let n = self.len() as f64;
        (self.poles().iter().map(|t| t.abs().ln()).sum::<f64>() / n).exp()
    }

    pub fn rational(&self) -> Result<RationalForm> {
        let n = self.len();
        if n > RATIONAL_LIMIT {
            return Err(Error::DegreeOverflow {
                degree: n,
                limit: RATIONAL_LIMIT,
            });
        }
        let scale = self.scale();
        let tau: Vec<f64> = self.poles().iter().map(|t| t / scale).collect();
        let (a, _) = super::cauchy::partial_fraction_numerator(&tau, &vec![C64::new(0.0, 0.0); n]);
        Ok(RationalForm {
            scale,
            a,
            p_beta: self.beta.numerator(scale),
            p_beta_sharp: self.beta_sharp.numerator(scale),
            p_rho: self.rho.numerator(scale),
        })
    }
}

/// Numerators over the common denominator `A(z) = Π(1 − z/t_n)`, all in the
/// scaled variable `u = z/scale`:
/// `β = P_β/A`, `ρ = P_ρ/A`, `φ = iP_β/(iA + P_ρ)`, `Θ = (iA − P_ρ)/(iA + P_ρ)`.
#[derive(Clone, Debug, Serialize)]
pub struct RationalForm {
    pub scale: f64,
    pub a: Poly,
    pub p_beta: Poly,
    pub p_beta_sharp: Poly,
    pub p_rho: Poly,
}

impl RationalForm {
    pub fn phi_numerator(&self) -> Poly {
        self.p_beta.scale(I)
    }

    pub fn phi_tilde_numerator(&self) -> Poly {
        self.p_beta_sharp.scale(I)
    }

    pub fn phi_denominator(&self) -> Poly {
        &self.a.scale(I) + &self.p_rho
    }

    pub fn theta_numerator(&self) -> Poly {
        &self.a.scale(I) - &self.p_rho
    }

    pub fn eval_phi(&self, z: C64) -> C64 {
        let u = z / self.scale;
        self.phi_numerator().eval(u) / self.phi_denominator().eval(u)
    }

    pub fn eval_theta(&self, z: C64) -> C64 {
        let u = z / self.scale;
        self.theta_numerator().eval(u) / self.phi_denominator().eval(u)
    }

    /// Coefficients normalized by the largest modulus.
    pub fn normalized(p: &Poly) -> Vec<C64> {
        let m = p.max_abs();
        if m == 0.0 {
            return p.coeffs().to_vec();
        }
        p.coeffs().iter().map(|c| c / m).collect()
    }
}
