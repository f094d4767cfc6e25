use serde::Serialize;

use super::model::ModelPair;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Atomic Clark measure `σ_ζ` with the constants `p_ζ`, `q_ζ` of its Herglotz
/// representation.
#[derive(Clone, Debug, Serialize)]
pub struct ClarkMeasure {
    pub zeta: C64,
    pub atoms: Vec<f64>,
    pub weights: Vec<f64>,
    pub p: f64,
    pub q: f64,
}

/// `Θ(x) = ζ` on ℝ is `ρ(x) = r` with `r = i(1 − ζ)/(1 + ζ) = tan(arg ζ / 2)`.
/// `ρ` increases from −∞ to +∞ on every gap between poles, so each gap holds
/// exactly one atom; the last atom sits left of `t_1` or right of `t_N`
/// depending on the sign of `r − ρ(∞)`.
pub fn clark_measure(model: &ModelPair, zeta: C64) -> Result<ClarkMeasure> {
    if (zeta.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::BadParameters(format!(
            "|zeta| = {} is not 1",
            zeta.norm()
        )));
    }
    let theta_inf = model.theta_at_infinity();
    let rho_inf = model.rho_at_infinity();
    if (zeta - theta_inf).norm() <= 1e-10 {
        let total: f64 = model.nu().iter().sum();
        return Err(Error::DegenerateZeta {
            zeta,
            p: (1.0 + rho_inf * rho_inf) / total,
        });
    }
    let poles = model.poles().to_vec();
    let nu = model.nu();
    let (atoms, weights) = if (zeta + 1.0).norm() <= 1e-15 {
        (poles.clone(), nu)
    } else {
        let r = (I * (1.0 - zeta) / (1.0 + zeta)).re;
        let rho = |x: f64| model.rho.eval_unguarded(C64::new(x, 0.0)).re;
        let mut atoms = Vec::with_capacity(poles.len());
        if r > rho_inf {
            let t1 = poles[0];
            let mut len = 1.0 + t1.abs();
            while rho(t1 - len) >= r {
                len *= 2.0;
                if len > 1e300 {
                    return Err(Error::BisectionFailure(
                        "outer Clark atom escapes to -infinity".into(),
                    ));
                }
            }
            atoms.push(bisect_increasing(&rho, r, t1 - len, t1));
        }
        for w in poles.windows(2) {
            atoms.push(bisect_increasing(&rho, r, w[0], w[1]));
        }
        if r < rho_inf {
            let tn = *poles.last().expect("nonempty");
            let mut len = 1.0 + tn.abs();
            while rho(tn + len) <= r {
                len *= 2.0;
                if len > 1e300 {
                    return Err(Error::BisectionFailure(
                        "outer Clark atom escapes to +infinity".into(),
                    ));
                }
            }
            atoms.push(bisect_increasing(&rho, r, tn, tn + len));
        }
        let weights = atoms
            .iter()
            .map(|&x| (1.0 + r * r) / model.rho.derivative(C64::new(x, 0.0)).re)
            .collect();
        (atoms, weights)
    };
    let th = model.theta(I);
    let q = ((zeta + th) / (zeta - th)).im;
    Ok(ClarkMeasure {
        zeta,
        atoms,
        weights,
        p: 0.0,
        q,
    })
}

/// Root of an increasing function on the open interval `(lo, hi)`; only
/// interior points are evaluated, bisection runs to floating-point resolution.
fn bisect_increasing<F: Fn(f64) -> f64>(f: &F, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

impl ClarkMeasure {
    /// `Re LHS(i) − Σ σ_m/(1 + t_m²) − p` for `LHS = (ζ + Θ)/(ζ − Θ)`;
    /// vanishes when the representation is complete.
    pub fn herglotz_residual(&self, model: &ModelPair) -> f64 {
        let th = model.theta(I);
        let lhs = (self.zeta + th) / (self.zeta - th);
        let s: f64 = self
            .atoms
            .iter()
            .zip(&self.weights)
            .map(|(t, w)| w / (1.0 + t * t))
            .sum();
        lhs.re - s - self.p
    }
}
