//! Weighted integrability of `|φ|^{−τ}` along a horizontal line.

use serde::Serialize;

use super::growth::exact_exponent;
use crate::herglotz::ModelPair;
use crate::numerics::quad::{integrate, QuadOptions};
use crate::{Error, Result, C64};

/// Distance from the line `Im z = η` below which a zero makes the integrand
/// non-integrable.
const LINE_TOL: f64 = 1e-9;
/// Tail accepted once it is below this fraction of the accumulated integral.
const TAIL_REL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct IntegralReport {
    pub n: f64,
    pub tau: f64,
    pub eta: f64,
    /// Core integral plus the tail estimate.
    pub value: f64,
    /// Estimate of the contribution of `|t| > cutoff` from the known power decay.
    pub tail: f64,
    pub cutoff: f64,
    /// `p` in `|integrand| ~ |t|^{−p}`.
    pub decay_power: f64,
    pub quadrature_error: f64,
    pub converges: bool,
}

pub fn integral_test(model: &ModelPair, n: f64, tau: f64, eta: f64) -> Result<IntegralReport> {
    if !(tau > 0.0 && eta >= 0.0 && n.is_finite()) {
        return Err(Error::BadParameters(format!(
            "need tau > 0, eta >= 0 and finite N (got tau = {tau}, eta = {eta}, N = {n})"
        )));
    }
    let rf = model.rational()?;
    let zeros: Vec<C64> = rf.p_beta.roots()?.iter().map(|u| u * rf.scale).collect();
    if tau >= 1.0 {
        if let Some(z) = zeros
            .iter()
            .find(|z| (z.im - eta).abs() <= LINE_TOL * (1.0 + z.norm()))
        {
            return Err(Error::DivergentNearRealZero { zero: *z });
        }
    }
    let decay_power = n + tau * f64::from(exact_exponent(model));
    let f = |x: f64| {
        let v = model.phi(C64::new(x, eta)).norm().powf(-tau) * (1.0 + x.abs()).powf(-n);
        C64::new(v, 0.0)
    };
    let t_max = model.poles().iter().fold(0.0f64, |m, t| m.max(t.abs()));
    let z_max = zeros.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut cutoff = 4.0 * (1.0 + t_max + z_max + eta);
    let opts = QuadOptions::default();

    // breakpoints at the real parts of zeros close to the line
    let mut breaks: Vec<f64> = zeros
        .iter()
        .filter(|z| (z.im - eta).abs() < 1.0 + 0.1 * z.norm())
        .map(|z| z.re)
        .filter(|x| x.abs() < cutoff)
        .collect();
    breaks.push(-cutoff);
    breaks.push(cutoff);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut value = 0.0;
    let mut err = 0.0;
    let mut converged = true;
    for w in breaks.windows(2) {
        let r = integrate(f, w[0], w[1], opts);
        value += r.value.re;
        err += r.error;
        converged &= r.converged;
    }
    if decay_power <= 1.0 {
        return Ok(IntegralReport {
            n,
            tau,
            eta,
            value: f64::INFINITY,
            tail: f64::INFINITY,
            cutoff,
            decay_power,
            quadrature_error: err,
            converges: false,
        });
    }
    let tail_at = |r: f64| (f(r).re + f(-r).re) * r / (decay_power - 1.0);
    let mut tail = tail_at(cutoff);
    for _ in 0..16 {
        if tail <= TAIL_REL * value {
            break;
        }
        let next = 10.0 * cutoff;
        for (a, b) in [(cutoff, next), (-next, -cutoff)] {
            let r = integrate(f, a, b, opts);
            value += r.value.re;
            err += r.error;
            converged &= r.converged;
        }
        cutoff = next;
        tail = tail_at(cutoff);
    }
    Ok(IntegralReport {
        n,
        tau,
        eta,
        value: value + tail,
        tail,
        cutoff,
        decay_power,
        quadrature_error: err,
        converges: converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::{build_model, Delta};
    use crate::numerics::linalg::c;
    use crate::spectral_data::RankOneData;

    fn two_atom() -> ModelPair {
        let d = RankOneData::from_parts(
            &[-1.0, 1.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0); 2],
            &[c(1.0, 0.0); 2],
            c(1.0, 0.0),
        )
        .unwrap();
        build_model(&d, Delta::Auto).unwrap()
    }

    #[test]
    fn finite_with_small_tail() {
        let m = two_atom();
        let r = integral_test(&m, 2.0, 1.0, 1.0).unwrap();
        assert!(r.converges);
        assert!(r.value.is_finite() && r.value > 0.0);
        assert!(r.tail < 1e-6 * r.value);
        let r4 = integral_test(&m, 4.0, 1.0, 1.0).unwrap();
        assert!(r4.value <= r.value);
    }

    #[test]
    fn real_zero_on_the_axis() {
        // zeros 1 ± √2 are real
        let m = two_atom();
        assert!(matches!(
            integral_test(&m, 2.0, 1.0, 0.0),
            Err(Error::DivergentNearRealZero { .. })
        ));
    }

    #[test]
    fn direct_quadrature_agrees() {
        // φ = iβ/(i + ρ) with β = 1 + 2z/(1 − z²), ρ = 2z/(1 − z²)
        let m = two_atom();
        let r = integral_test(&m, 3.0, 1.0, 0.5).unwrap();
        let g = |x: f64| {
            let z = C64::new(x, 0.5);
            let beta = 1.0 + 2.0 * z / (1.0 - z * z);
            let rho = 2.0 * z / (1.0 - z * z);
            let phi = C64::new(0.0, 1.0) * beta / (C64::new(0.0, 1.0) + rho);
            C64::new(1.0 / (phi.norm() * (1.0 + x.abs()).powi(3)), 0.0)
        };
        let o = crate::numerics::quad::integrate_real_line(g, 0.0, 1.0, QuadOptions::default());
        assert!((o.value.re - r.value).abs() < 1e-8 * r.value);
    }
}
