//! Growth of the model functions along the imaginary axis.

use serde::Serialize;

use crate::herglotz::ModelPair;
use crate::numerics::RealCompensatedSum;
use crate::C64;

/// Relative size below which a moment of `β` is treated as zero.
const MOMENT_TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    pub y_grid: Vec<f64>,
    pub phi_abs: Vec<f64>,
    pub beta_abs: Vec<f64>,
    pub phi_tilde_abs: Vec<f64>,
    /// `y·Im β(iy)`; tends to `Σ a_n b̄_n μ_n` when that sum is real and `κ` is real.
    pub y_im_beta: Vec<f64>,
    /// Least-squares slope of `log|φ(iy)|` against `log y` on the top decade.
    pub fitted_exponent: f64,
    /// Exact asymptotic exponent of `|φ(iy)|` for the finite rational model.
    pub exact_exponent: i32,
    /// `min y·|φ(iy)|` over the grid.
    pub lower_envelope_c: f64,
    /// Relative change of `min_{10 ≤ y ≤ Y} y·|φ(iy)|` as `Y` runs over the
    /// top decade.
    pub envelope_drift: f64,
}

impl GrowthProfile {
    /// `min y·|φ(iy)|` over grid points in `[lo, hi]`.
    pub fn envelope(&self, lo: f64, hi: f64) -> f64 {
        self.y_grid
            .iter()
            .zip(&self.phi_abs)
            .filter(|(y, _)| **y >= lo * (1.0 - 1e-12) && **y <= hi * (1.0 + 1e-12))
            .map(|(y, v)| y * v)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `β = β(∞) − Σ_k m_k z^{−k−1}` with `m_k = Σ w_n t_n^k`, and `i + ρ` tends
/// to `i + ρ(∞) ≠ 0`, so `|φ(iy)| ~ y^{−j}` where `j` is the index of the
/// first non-vanishing coefficient.
pub fn exact_exponent(model: &ModelPair) -> i32 {
    let w = &model.beta.residues;
    let t = model.poles();
    let b_inf = model.beta_at_infinity();
    let size: f64 = model.beta.constant.norm()
        + w.iter()
            .zip(t)
            .map(|(w, t)| w.norm() / t.abs())
            .sum::<f64>();
    if b_inf.norm() > MOMENT_TOL * size {
        return 0;
    }
    let mut powers: Vec<f64> = vec![1.0; t.len()];
    for k in 0..t.len() {
        let m: C64 = w.iter().zip(&powers).map(|(w, p)| w * p).sum();
        let s: f64 = w.iter().zip(&powers).map(|(w, p)| w.norm() * p.abs()).sum();
        if m.norm() > MOMENT_TOL * s {
            return -(k as i32) - 1;
        }
        for (p, x) in powers.iter_mut().zip(t) {
            *p *= x;
        }
    }
    -(t.len() as i32)
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn growth_profile(model: &ModelPair, y_max: f64, n_points: usize) -> GrowthProfile {
    let y_max = y_max.max(10.0);
    let y_grid = log_grid(1.0, y_max, n_points);
    let mut phi_abs = Vec::with_capacity(y_grid.len());
    let mut beta_abs = Vec::with_capacity(y_grid.len());
    let mut phi_tilde_abs = Vec::with_capacity(y_grid.len());
    let mut y_im_beta = Vec::with_capacity(y_grid.len());
    for &y in &y_grid {
        let z = C64::new(0.0, y);
        phi_abs.push(model.phi(z).norm());
        phi_tilde_abs.push(model.phi_tilde(z).norm());
        // β(iy) − κ summed without cancellation against the constant
        let mut re = RealCompensatedSum::new();
        let mut im = RealCompensatedSum::new();
        re.add(model.beta.constant.re);
        im.add(model.beta.constant.im);
        for (w, &t) in model.beta.residues.iter().zip(model.poles()) {
            let v = w * (1.0 / (t - z) - 1.0 / t);
            re.add(v.re);
            im.add(v.im);
        }
        let b = C64::new(re.value(), im.value());
        beta_abs.push(b.norm());
        y_im_beta.push(y * b.im);
    }
    let top = y_max / 10.0;
    let (lx, ly): (Vec<f64>, Vec<f64>) = y_grid
        .iter()
        .zip(&phi_abs)
        .filter(|(y, v)| **y >= top && **v > 0.0)
        .map(|(y, v)| (y.ln(), v.ln()))
        .unzip();
    let fitted_exponent = if lx.len() >= 2 {
        least_squares_slope(&lx, &ly)
    } else {
        f64::NAN
    };
    let lower_envelope_c = y_grid
        .iter()
        .zip(&phi_abs)
        .map(|(y, v)| y * v)
        .fold(f64::INFINITY, f64::min);
    let y_top = *y_grid.last().expect("grid");
    let full = y_grid
        .iter()
        .zip(&phi_abs)
        .filter(|(y, _)| **y >= 10.0 * (1.0 - 1e-12))
        .fold(
            (f64::INFINITY, f64::INFINITY, 0.0f64),
            |(run, first, drift), (y, v)| {
                let run = run.min(y * v);
                if *y < top * (1.0 - 1e-12) {
                    (run, first, drift)
                } else {
                    let first = if first.is_finite() { first } else { run };
                    (run, first, drift.max((run / first - 1.0).abs()))
                }
            },
        );
    let envelope_drift = if y_top >= 100.0 { full.2 } else { f64::NAN };
    GrowthProfile {
        envelope_drift,
        exact_exponent: exact_exponent(model),
        y_grid,
        phi_abs,
        beta_abs,
        phi_tilde_abs,
        y_im_beta,
        fitted_exponent,
        lower_envelope_c,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::{build_model, Delta};
    use crate::numerics::linalg::c;
    use crate::spectral_data::RankOneData;

    #[test]
    fn generic_instance_has_flat_profile() {
        let d = RankOneData::from_parts(
            &[-1.0, 1.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0); 2],
            &[c(1.0, 0.0); 2],
            c(1.0, 0.0),
        )
        .unwrap();
        let m = build_model(&d, Delta::Auto).unwrap();
        let g = growth_profile(&m, 1e4, 200);
        assert_eq!(g.exact_exponent, 0);
        assert!(g.fitted_exponent.abs() < 1e-3);
        assert!(g.lower_envelope_c > 0.1);
        assert!(g.envelope_drift < 1e-12);
        assert_eq!(g.envelope(10.0, 1e4), g.envelope(10.0, 1e3));
    }

    #[test]
    fn kappa_equal_to_omega_with_zero_mass_decays_twice() {
        // w = (1, -1), Σ w = 0 and κ = ω = Σ w/t
        let d = RankOneData::from_parts(
            &[1.0, 2.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0); 2],
            &[c(1.0, 0.0), c(-1.0, 0.0)],
            c(0.5, 0.0),
        )
        .unwrap();
        let m = ModelPair::new_unchecked(&d, Delta::Auto);
        let g = growth_profile(&m, 1e4, 200);
        assert_eq!(g.exact_exponent, -2);
        assert!((g.fitted_exponent + 2.0).abs() < 1e-2);
        let last = g.y_grid.last().unwrap() * g.phi_abs.last().unwrap();
        assert!(last < 1e-3);
        // y|φ(iy)| ~ c/y, so the running minimum keeps falling by a decade
        assert!(g.envelope_drift > 0.8);
        assert!(g.envelope(10.0, 1e4) < 0.2 * g.envelope(10.0, 1e3));
    }

    #[test]
    fn positive_instance_limit() {
        let d = RankOneData::from_parts(
            &[-3.0, 1.0, 4.0],
            &[0.5, 1.0, 2.0],
            &[c(1.0, 0.0), c(0.5, 0.0), c(0.3, 0.0)],
            &[c(1.0, 0.0), c(0.5, 0.0), c(0.3, 0.0)],
            c(2.0, 0.0),
        )
        .unwrap();
        let m = build_model(&d, Delta::Auto).unwrap();
        let g = growth_profile(&m, 1e6, 100);
        let want: f64 = d.beta_weights().iter().map(|w| w.re).sum();
        assert!((g.y_im_beta.last().unwrap() - want).abs() < 1e-6 * want);
    }
}
