//! Truncations of the zero-free generating function `φ = (1 + Θ)/(2 cos π√z)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::diagnostics::{volterra_window_check, Rectangle};
use crate::herglotz::{build_model, Delta, ModelPair};
use crate::spectral_data::RankOneData;
use crate::{Error, Result, C64};

#[derive(Clone, Debug, Serialize)]
pub struct SharpInstance {
    pub n: usize,
    pub eps: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub data: RankOneData,
    /// Partial sums of `Σ |a'_n|² t_n^{2α₁−2}`.
    pub smoothness_a: Vec<f64>,
    /// Partial sums of `Σ |b'_n|² t_n^{2α₂−2}`.
    pub smoothness_b: Vec<f64>,
    /// Summands of both sums decrease over the second half of the range.
    pub tails_monotone: bool,
}

/// `t_n = (n − 1/2)²`, the zeros of `cos π√z`.
pub fn sharp_t(n: usize) -> f64 {
    let x = n as f64 - 0.5;
    x * x
}

/// `c_n = −1/Φ'(t_n) = (2/π)(−1)^{n+1}(n − 1/2)`.
pub fn sharp_c(n: usize) -> f64 {
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 / PI * sign * (n as f64 - 0.5)
}

fn tail_decreasing(terms: &[f64]) -> bool {
    let start = terms.len() / 2;
    terms[start..].windows(2).all(|w| w[1] < w[0])
}

pub fn sharp_instance(
    eps: Option<f64>,
    alpha1: f64,
    alpha2: f64,
    n: usize,
) -> Result<SharpInstance> {
    let e = 1.0 - alpha1 - alpha2;
    if !(alpha1 >= 0.0 && alpha2 >= 0.0 && e > 0.0) {
        return Err(Error::BadParameters(format!(
            "need alpha1, alpha2 >= 0 with alpha1 + alpha2 < 1 (got {alpha1}, {alpha2})"
        )));
    }
    if let Some(eps) = eps {
        if (eps - e).abs() > 1e-12 {
            return Err(Error::BadParameters(format!(
                "eps = {eps} but 1 - alpha1 - alpha2 = {e}"
            )));
        }
    }
    if n < 10 {
        return Err(Error::BadParameters(format!("truncation N = {n} below 10")));
    }
    let power = 2.0 - 2.0 * alpha1 - 0.5 - e;
    let t: Vec<f64> = (1..=n).map(sharp_t).collect();
    let a: Vec<f64> = (1..=n).map(|k| (k as f64).powf(power)).collect();
    let b: Vec<f64> = (1..=n).zip(&a).map(|(k, a)| sharp_c(k) / a).collect();
    let terms_a: Vec<f64> = a
        .iter()
        .zip(&t)
        .map(|(a, t)| a * a * t.powf(2.0 * alpha1 - 2.0))
        .collect();
    let terms_b: Vec<f64> = b
        .iter()
        .zip(&t)
        .map(|(b, t)| b * b * t.powf(2.0 * alpha2 - 2.0))
        .collect();
    let partial = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .scan(0.0, |s, x| {
                *s += x;
                Some(*s)
            })
            .collect()
    };
    let data = RankOneData::from_parts(
        &t,
        &vec![1.0; n],
        &a.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>(),
        &b.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>(),
        C64::new(1.0, 0.0),
    )?;
    Ok(SharpInstance {
        n,
        eps: e,
        alpha1,
        alpha2,
        data,
        smoothness_a: partial(&terms_a),
        smoothness_b: partial(&terms_b),
        tails_monotone: tail_decreasing(&terms_a) && tail_decreasing(&terms_b),
    })
}

impl SharpInstance {
    /// The model with `ρ = Σ(1/(t_n − z) − 1/t_n)ν_n`, the normalization that
    /// survives `N → ∞`.
    pub fn model(&self) -> Result<ModelPair> {
        build_model(&self.data, Delta::Value(0.0))
    }

    /// Copy with the sign of `c_index` (1-based) reversed.
    pub fn flipped(&self, index: usize) -> Result<SharpInstance> {
        if index == 0 || index > self.n {
            return Err(Error::BadParameters(format!(
                "index {index} outside 1..={}",
                self.n
            )));
        }
        let mut out = self.clone();
        out.data.b[index - 1] = -out.data.b[index - 1];
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MittagLefflerCheck {
    pub z: C64,
    pub n: usize,
    pub lhs: C64,
    pub rhs_partial: C64,
    pub err: f64,
    pub tail_bound: f64,
    pub within_bound: bool,
}

/// `1/cos(π√z) = 1 + Σ (1/(t_n − z) − 1/t_n) c_n` truncated at `N`.
pub fn mittag_leffler_check(z: C64, n: usize) -> Result<MittagLefflerCheck> {
    if n == 0 {
        return Err(Error::BadParameters("N must be positive".into()));
    }
    let near = (1..=n + 1)
        .map(|k| (k, (sharp_t(k) - z).norm()))
        .chain(std::iter::once({
            // nearest pole beyond the truncation as well
            let k = ((z.norm().sqrt() + 0.5).round() as usize).max(1);
            (k, (sharp_t(k) - z).norm())
        }))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    if near.1 < 0.25 {
        return Err(Error::NearPole {
            z,
            pole: sharp_t(near.0),
        });
    }
    // cos is even, so the branch of the square root does not matter
    let lhs = 1.0 / (PI * z.sqrt()).cos();
    let mut rhs = C64::new(1.0, 0.0);
    let mut abs_sum = 1.0;
    for k in 1..=n {
        let t = sharp_t(k);
        let term = (1.0 / (t - z) - 1.0 / t) * sharp_c(k);
        abs_sum += term.norm();
        rhs += term;
    }
    // exact moduli until t_m ≥ 2|z|, then Σ_{k>M} ≤ (2/π)|z|/(M − 1/2)²
    let mut tail = 0.0;
    let mut m = n;
    while sharp_t(m + 1) < 2.0 * z.norm() {
        m += 1;
        let t = sharp_t(m);
        tail += ((1.0 / (t - z) - 1.0 / t) * sharp_c(m)).norm();
    }
    tail += 2.0 / PI * z.norm() / (m as f64 - 0.5).powi(2);
    let rounding = 1e-14 * (abs_sum + lhs.norm());
    let tail_bound = tail + rounding;
    let err = (lhs - rhs).norm();
    Ok(MittagLefflerCheck {
        z,
        n,
        lhs,
        rhs_partial: rhs,
        err,
        tail_bound,
        within_bound: err <= tail_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroFreeness {
    pub rectangle: Rectangle,
    pub zero_count: i64,
    pub winding: f64,
    /// Smallest `|φ|` over `resolution` samples per edge.
    pub min_boundary_abs: f64,
}

pub fn sharp_zero_freeness(
    inst: &SharpInstance,
    rect: Rectangle,
    resolution: usize,
) -> Result<ZeroFreeness> {
    let model = inst.model()?;
    let w = volterra_window_check(&model, rect)?;
    let r = w.contour;
    let corners = [
        C64::new(r.x0, r.y0),
        C64::new(r.x1, r.y0),
        C64::new(r.x1, r.y1),
        C64::new(r.x0, r.y1),
    ];
    let m = resolution.max(2);
    let mut min_abs = f64::INFINITY;
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for j in 0..m {
            let z = a + (b - a) * (j as f64 / m as f64);
            min_abs = min_abs.min(model.phi(z).norm());
        }
    }
    Ok(ZeroFreeness {
        rectangle: rect,
        zero_count: w.zero_count,
        winding: w.winding,
        min_boundary_abs: min_abs,
    })
}

/// `max |β_N(z) Φ_N(z) − 1|` over the grid, with `Φ_N = Π_{n≤N}(1 − z/t_n)`.
pub fn truncation_discrepancy(n: usize, grid: &[C64]) -> f64 {
    grid.iter()
        .map(|&z| {
            let mut beta = C64::new(1.0, 0.0);
            let mut prod = C64::new(1.0, 0.0);
            for k in 1..=n {
                let t = sharp_t(k);
                beta += (1.0 / (t - z) - 1.0 / t) * sharp_c(k);
                prod *= 1.0 - z / t;
            }
            (beta * prod - 1.0).norm()
        })
        .fold(0.0, f64::max)
}
