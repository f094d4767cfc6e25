//! Dense matrix realization `L = (A⁻¹ − (A⁻¹a)κ⁻¹(b*A⁻¹))⁻¹` of the
//! perturbed operator, with the shifted construction when `κ` is singular.

use serde::{Deserialize, Serialize};

use crate::numerics::linalg::{self, CMat};
use crate::spectral_data::{validate_rank_n, RankNData, RankOneData};
use crate::{Error, Result, C64};

/// Grid size of the shift scan.
pub const SHIFT_CANDIDATES: usize = 1000;
/// Required smallest singular value of `κ(λ)`.
pub const SHIFT_SIGMA_MIN: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "lambda")]
pub enum Route {
    Direct,
    Shifted(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoutePreference {
    /// Direct when `κ` is invertible, shifted otherwise.
    #[default]
    Auto,
    Direct,
    Shift,
}

impl std::str::FromStr for RoutePreference {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(RoutePreference::Auto),
            "direct" => Ok(RoutePreference::Direct),
            "shift" => Ok(RoutePreference::Shift),
            _ => Err(Error::BadParameters(format!("unknown route '{s}'"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatrixRealization {
    pub l: CMat,
    pub route: Route,
    /// `A⁻¹ − (A⁻¹a)κ⁻¹(b*A⁻¹)` for the (possibly shifted) diagonal.
    pub inverse: CMat,
    pub mu: Vec<f64>,
}

/// `b*` as an `n × N` matrix: `(b*)_{jn} = conj(b_{nj}) μ_n`.
fn b_star(b: &CMat, mu: &[f64]) -> CMat {
    CMat::from_fn(b.ncols(), b.nrows(), |j, n| b[(n, j)].conj() * mu[n])
}

/// `κ(λ) = κ + λ b*(A − λ)⁻¹A⁻¹a`.
pub fn shifted_kappa(data: &RankNData, lambda: C64) -> CMat {
    let t = data.base.t();
    let mu = data.base.mu();
    let r = data.rank();
    let mut k = data.kappa.clone();
    for j in 0..r {
        for l in 0..r {
            let s: C64 = (0..t.len())
                .map(|n| data.b[(n, j)].conj() * mu[n] * data.a[(n, l)] / ((t[n] - lambda) * t[n]))
                .sum();
            k[(j, l)] += lambda * s;
        }
    }
    k
}

/// `(D⁻¹ − (D⁻¹a)κ⁻¹(b*D⁻¹))` for a diagonal `D`.
fn perturbed_inverse(d: &[C64], a: &CMat, bs: &CMat, kappa: &CMat) -> Result<CMat> {
    let n = d.len();
    let kinv = kappa
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Admissibility("coupling matrix is singular".into()))?;
    let da = CMat::from_fn(n, a.ncols(), |i, j| a[(i, j)] / d[i]);
    let bd = CMat::from_fn(bs.nrows(), n, |j, i| bs[(j, i)] / d[i]);
    let mut m = -(da * kinv * bd);
    for i in 0..n {
        m[(i, i)] += 1.0 / d[i];
    }
    Ok(m)
}

/// `L(A − λ, a, b, κ(λ))` and its perturbed inverse; adding `λ` back gives
/// `L(A, a, b, κ)`.
pub fn shifted_operator(data: &RankNData, lambda: C64) -> Result<(CMat, CMat)> {
    let kappa = if lambda == C64::new(0.0, 0.0) {
        data.kappa.clone()
    } else {
        shifted_kappa(data, lambda)
    };
    let d: Vec<C64> = data.base.t().iter().map(|t| t - lambda).collect();
    let bs = b_star(&data.b, &data.base.mu());
    let m = perturbed_inverse(&d, &data.a, &bs, &kappa)?;
    let l = m
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::EigensolveFailure("perturbed inverse is singular".into()))?;
    Ok((l, m))
}

fn assemble(data: &RankNData, lambda: f64) -> Result<(CMat, CMat)> {
    let (mut l, m) = shifted_operator(data, C64::new(lambda, 0.0))?;
    for i in 0..l.nrows() {
        l[(i, i)] += lambda;
    }
    Ok((l, m))
}

/// Deterministic scan of `[−2T, 2T]` for a real `λ` off the atoms with `κ(λ)`
/// invertible; among admissible points the one maximizing
/// `σ_min(κ(λ))·min(1, dist(λ, {t_n})/T)` wins.
pub fn choose_shift(data: &RankNData) -> Result<f64> {
    let t = data.base.t();
    let tmax = data.base.t_max();
    let mut best: Option<(f64, f64)> = None;
    for k in 0..SHIFT_CANDIDATES {
        let lambda = -2.0 * tmax + 4.0 * tmax * (k as f64 + 0.5) / SHIFT_CANDIDATES as f64;
        let dist = t
            .iter()
            .map(|x| (x - lambda).abs())
            .fold(f64::INFINITY, f64::min);
        if dist <= 1e-8 * (1.0 + tmax) {
            continue;
        }
        let s = linalg::sigma_min(&shifted_kappa(data, C64::new(lambda, 0.0)));
        if s <= SHIFT_SIGMA_MIN {
            continue;
        }
        let score = s * (dist / tmax).min(1.0);
        if best.is_none_or(|(_, b)| score > b) {
            best = Some((lambda, score));
        }
    }
    best.map(|(l, _)| l).ok_or(Error::NoInvertibleShift {
        candidates: SHIFT_CANDIDATES,
    })
}

pub fn build_matrix_rank_n(data: &RankNData, pref: RoutePreference) -> Result<MatrixRealization> {
    let report = validate_rank_n(data);
    if !report.condition_a {
        return Err(Error::Admissibility(format!(
            "kappa - b*A^-1 a is singular (smallest singular value {:e})",
            report.witnesses.distance
        )));
    }
    let kappa_ok = linalg::sigma_min(&data.kappa)
        > SHIFT_SIGMA_MIN * linalg::singular_values(&data.kappa)[0].max(1.0);
    let route = match pref {
        RoutePreference::Direct if !kappa_ok => {
            return Err(Error::BadParameters(
                "kappa is singular; the direct route is unavailable".into(),
            ))
        }
        RoutePreference::Direct => Route::Direct,
        RoutePreference::Auto if kappa_ok => Route::Direct,
        _ => Route::Shifted(choose_shift(data)?),
    };
    let (l, inverse) = match route {
        Route::Direct => assemble(data, 0.0)?,
        Route::Shifted(lambda) => assemble(data, lambda)?,
    };
    Ok(MatrixRealization {
        l,
        route,
        inverse,
        mu: data.base.mu(),
    })
}

pub fn build_matrix(data: &RankOneData, pref: RoutePreference) -> Result<MatrixRealization> {
    build_matrix_rank_n(&data.to_rank_n(), pref)
}

impl MatrixRealization {
    pub fn dim(&self) -> usize {
        self.l.nrows()
    }

    /// `max(‖L·M − I‖, ‖M·L − I‖)_F / √N` where `M` is the perturbed inverse
    /// (of `L − λ_shift` on the shifted route).
    pub fn inverse_residual(&self) -> f64 {
        let n = self.dim();
        let lambda = match self.route {
            Route::Direct => 0.0,
            Route::Shifted(l) => l,
        };
        let mut ls = self.l.clone();
        for i in 0..n {
            ls[(i, i)] -= lambda;
        }
        let id = CMat::identity(n, n);
        let r1 = linalg::frobenius(&(&ls * &self.inverse - &id));
        let r2 = linalg::frobenius(&(&self.inverse * &ls - &id));
        r1.max(r2) / (n as f64).sqrt()
    }

    /// Adjoint with respect to `⟨x, y⟩ = Σ x_n conj(y_n) μ_n`.
    pub fn weighted_adjoint(&self) -> CMat {
        linalg::weighted_adjoint(&self.l, &self.mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::c;

    #[test]
    fn one_atom_closed_form() {
        let d =
            RankOneData::from_parts(&[1.0], &[1.0], &[c(1.0, 0.0)], &[c(1.0, 0.0)], c(2.0, 0.0))
                .unwrap();
        let m = build_matrix(&d, RoutePreference::Auto).unwrap();
        assert!((m.l[(0, 0)] - c(2.0, 0.0)).norm() < 1e-15);
        assert_eq!(m.route, Route::Direct);
    }

    #[test]
    fn two_atom_inverse() {
        let d = RankOneData::from_parts(
            &[-1.0, 1.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[c(1.0, 0.0), c(1.0, 0.0)],
            c(1.0, 0.0),
        )
        .unwrap();
        let m = build_matrix(&d, RoutePreference::Auto).unwrap();
        let want = [[-2.0, 1.0], [1.0, 0.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!((m.inverse[(i, j)] - c(w, 0.0)).norm() < 1e-15);
            }
        }
        assert!(m.inverse_residual() < 1e-15);
    }

    #[test]
    fn shifted_route_reproduces_direct() {
        let d = RankOneData::from_parts(
            &[-3.0, 0.5, 2.0],
            &[1.0, 2.0, 0.5],
            &[c(1.0, 0.2), c(0.5, -0.5), c(-0.3, 0.0)],
            &[c(0.6, 0.0), c(0.2, 0.9), c(1.0, 1.0)],
            c(0.8, -0.2),
        )
        .unwrap();
        let direct = build_matrix(&d, RoutePreference::Direct).unwrap();
        let shifted = build_matrix(&d, RoutePreference::Shift).unwrap();
        assert!(matches!(shifted.route, Route::Shifted(_)));
        let diff = linalg::frobenius(&(&direct.l - &shifted.l)) / linalg::frobenius(&direct.l);
        assert!(diff < 1e-11, "{diff}");
    }

    #[test]
    fn zero_kappa_forces_shift() {
        let d = RankOneData::from_parts(
            &[-1.0, 2.0],
            &[1.0, 1.0],
            &[c(1.0, 0.0), c(1.0, 0.0)],
            &[c(1.0, 0.0), c(1.0, 0.0)],
            c(0.0, 0.0),
        )
        .unwrap();
        let m = build_matrix(&d, RoutePreference::Auto).unwrap();
        assert!(matches!(m.route, Route::Shifted(_)));
        assert!(build_matrix(&d, RoutePreference::Direct).is_err());
    }
}
