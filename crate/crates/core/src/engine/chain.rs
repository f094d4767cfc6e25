//! Root-vector chains `φ/(z − λ)^ℓ` at multiple zeros.

use serde::Serialize;

use super::matrix::MatrixRealization;
use super::zeros::ModelZeros;
use crate::herglotz::ModelPair;
use crate::numerics::linalg;
use crate::numerics::Poly;
use crate::{Error, Result, C64};

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    /// Zero location refined as a simple root of the `(order − 1)`-th
    /// derivative of the numerator.
    pub lambda: C64,
    pub order: usize,
    pub length: usize,
    /// `|remainder|` after dividing the numerator by `(z − λ)^ℓ`, relative to
    /// the size of the numerator at `λ`; `ℓ = 1..length`.
    pub divisibility: Vec<f64>,
    /// Worst relative residual of `(T − λ)[φ/(z − λ)^ℓ] = φ/(z − λ)^{ℓ−1}`
    /// (`= 0` for `ℓ = 1`) on sample points.
    pub identity_residual: f64,
    /// `‖(L − λ)u^(ℓ) − u^(ℓ−1)‖ / (‖L‖‖u^(ℓ)‖)` with `u^(ℓ)_m = a_m/(t_m − λ)^ℓ`.
    pub matrix_residuals: Vec<f64>,
}

fn refine(p: &Poly, u0: C64, order: usize) -> C64 {
    let mut q = p.clone();
    for _ in 1..order {
        q = q.derivative();
    }
    let dq = q.derivative();
    let mut u = u0;
    for _ in 0..30 {
        let d = dq.eval(u);
        if d == C64::new(0.0, 0.0) {
            break;
        }
        let step = q.eval(u) / d;
        u -= step;
        if step.norm() <= 2.0 * f64::EPSILON * (1.0 + u.norm()) {
            break;
        }
    }
    u
}

pub fn root_chain(
    model: &ModelPair,
    zeros: &ModelZeros,
    lambda: C64,
    length: usize,
    matrix: Option<&MatrixRealization>,
) -> Result<ChainReport> {
    let cluster = zeros
        .clusters
        .iter()
        .min_by(|a, b| {
            (a.center - lambda)
                .norm()
                .total_cmp(&(b.center - lambda).norm())
        })
        .ok_or(Error::OrderTooHigh {
            lambda,
            requested: length,
            available: 0,
        })?;
    let scale_s = super::oracle::spectral_scale(&zeros.zeros);
    let order = if (cluster.center - lambda).norm() <= 1e-4 * scale_s {
        cluster.multiplicity
    } else {
        0
    };
    if length == 0 || length > order {
        return Err(Error::OrderTooHigh {
            lambda,
            requested: length,
            available: order,
        });
    }
    let rf = model.rational()?;
    // zeros in the lower half-plane belong to φ̃; use its numerator there
    let lower = cluster.center.im < -super::zeros::HALF_PLANE_TOL * scale_s;
    let (p, target) = if lower {
        (&rf.p_beta_sharp, cluster.center.conj())
    } else {
        (&rf.p_beta, cluster.center)
    };
    let u = refine(p, target / rf.scale, order);
    let lam = if lower {
        (u * rf.scale).conj()
    } else {
        u * rf.scale
    };

    let size: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm() * u.norm().powi(k as i32))
        .sum();
    let mut divisibility = Vec::with_capacity(length);
    let mut q = p.clone();
    for _ in 0..length {
        let (next, rem) = q.divide_linear(u);
        divisibility.push(rem.norm() / size);
        q = next;
    }

    let phi = |z: C64| {
        if lower {
            model.phi_tilde(z)
        } else {
            model.phi(z)
        }
    };
    let lam_f = if lower { lam.conj() } else { lam };
    let samples = [
        C64::new(0.37, 1.1),
        C64::new(-2.3, 0.6),
        C64::new(4.1, 2.9),
        C64::new(0.9, 7.0),
    ];
    let mut identity_residual: f64 = 0.0;
    for &z in &samples {
        let ph = phi(z);
        for l in 1..=length {
            let f = ph / (z - lam_f).powi(l as i32);
            let c = if l == 1 { ph } else { C64::new(0.0, 0.0) };
            let lhs = z * f - c - lam_f * f;
            let rhs = if l == 1 {
                C64::new(0.0, 0.0)
            } else {
                ph / (z - lam_f).powi(l as i32 - 1)
            };
            identity_residual =
                identity_residual.max((lhs - rhs).norm() / (1.0 + z.norm() * f.norm()));
        }
    }

    let matrix_residuals = match matrix {
        Some(m) => {
            let t = model.data.base.t();
            let a = &model.data.a;
            let n = t.len();
            let norm_l = linalg::singular_values(&m.l)[0];
            let mut shifted = m.l.clone();
            for i in 0..n {
                shifted[(i, i)] -= lam;
            }
            let mut prev = nalgebra::DVector::<C64>::zeros(n);
            let mut out = Vec::new();
            for l in 1..=length {
                let cur = nalgebra::DVector::from_iterator(
                    n,
                    (0..n).map(|i| a[i] / (t[i] - lam).powi(l as i32)),
                );
                let r = &shifted * &cur - &prev;
                out.push(r.norm() / (norm_l * cur.norm()));
                prev = cur;
            }
            out
        }
        None => Vec::new(),
    };
    Ok(ChainReport {
        lambda: lam,
        order,
        length,
        divisibility,
        identity_residual,
        matrix_residuals,
    })
}
