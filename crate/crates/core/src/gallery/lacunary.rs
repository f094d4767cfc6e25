//! Lacunary subsequences `x_{k+1} > max((2x_k)², t*²)` of a spectrum.

use serde::Serialize;

use crate::{Error, Result};

/// Largest value kept exactly in an `f64`.
const CAP: f64 = 9_007_199_254_740_992.0;

#[derive(Clone, Debug, Serialize)]
pub struct LacunaryReport {
    pub x: Vec<f64>,
    /// The smallest `t > 2x_k` used for each step.
    pub t_star: Vec<f64>,
    /// `log x_{k+1} / log x_k`, at least 2 by construction.
    pub log_ratios: Vec<f64>,
    pub truncated_by_cap: bool,
}

/// `x_1 = 2`, `x_{k+1} = ⌊max((2x_k)², t*²)⌋ + 1` with `t*` the smallest
/// `|t_n| > 2x_k`. Stops when no such `t_n` exists or at `2^53`.
pub fn lacunary_sequence(t_seq: &[f64]) -> Result<LacunaryReport> {
    let mut abs: Vec<f64> = t_seq
        .iter()
        .map(|t| t.abs())
        .filter(|t| t.is_finite())
        .collect();
    abs.sort_by(f64::total_cmp);
    let mut x = vec![2.0];
    let mut t_star = Vec::new();
    let mut truncated = false;
    loop {
        let last = *x.last().expect("non-empty");
        let idx = abs.partition_point(|&t| t <= 2.0 * last);
        let Some(&ts) = abs.get(idx) else { break };
        let next = (2.0 * last).powi(2).max(ts * ts).floor() + 1.0;
        if next > CAP {
            truncated = true;
            break;
        }
        t_star.push(ts);
        x.push(next);
    }
    if x.len() < 2 {
        return Err(Error::ExhaustedInput(format!(
            "no |t_n| above 4 among {} values",
            t_seq.len()
        )));
    }
    let log_ratios = x.windows(2).map(|w| w[1].ln() / w[0].ln()).collect();
    Ok(LacunaryReport {
        x,
        t_star,
        log_ratios,
        truncated_by_cap: truncated,
    })
}
