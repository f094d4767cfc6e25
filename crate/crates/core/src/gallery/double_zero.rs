//! Three-atom real-type instance whose generating function has a double
//! real zero.

use crate::numerics::linalg::c;
use crate::spectral_data::RankOneData;
use crate::{Error, Result};

const T: [f64; 3] = [1.0, 2.0, 3.0];
const W: [f64; 3] = [1.0, -1.0, 1.0];

fn g(x: f64) -> f64 {
    T.iter()
        .zip(&W)
        .map(|(t, w)| w * (1.0 / (t - x) - 1.0 / t))
        .sum()
}

fn g_prime(x: f64) -> f64 {
    T.iter().zip(&W).map(|(t, w)| w / ((t - x) * (t - x))).sum()
}

/// `t = (1, 2, 3)`, `μ = 1`, `a = (1, 1, 1)`, `b = (1, −1, 1)`; `β = κ + g`
/// with `g' = Σ w_n/(t_n − x)²` running from `+∞` to `−∞` on `(1, 2)`.
/// Its root `x*` is found by bisection and `κ = −g(x*)` makes `x*` a double
/// zero. Returns the data and `x*`.
pub fn double_zero_instance() -> Result<(RankOneData, f64)> {
    let (mut lo, mut hi) = (1.0, 2.0);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g_prime(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    if !(g_prime(lo) >= 0.0 && g_prime(hi) <= 0.0) {
        return Err(Error::BisectionFailure(
            "no sign change of g' on (1, 2)".into(),
        ));
    }
    let kappa = -g(x);
    let data = RankOneData::from_parts(
        &T,
        &[1.0; 3],
        &[c(1.0, 0.0); 3],
        &[c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)],
        c(kappa, 0.0),
    )?;
    Ok((data, x))
}
