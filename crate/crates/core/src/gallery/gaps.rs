//! Gap conditions on spectra for which synthesis can fail.

use serde::Serialize;

use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub c: f64,
    pub power: f64,
    /// `min_n C|s_{n+1} − s_n| / |s_n|^N`; at least 1 when the lower bound holds.
    pub lower_margin: f64,
    pub lower_worst_index: usize,
    pub lower_holds: bool,
    /// `|s_{n+1} − s_n| / |s_n|`.
    pub ratios: Vec<f64>,
    /// Least-squares slope of `log r_n` against `log n`.
    pub ratio_slope: f64,
    /// `r_last / max r`.
    pub ratio_tail: f64,
    pub little_o_holds: bool,
    pub holds: bool,
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// `|s_n|^N ≤ C|s_{n+1} − s_n| = o(|s_n|)` on the supplied range. The
/// little-o part is judged by the ratios decaying: negative log-log slope and
/// the last ratio below half the largest.
pub fn synthesis_gap_check(s_seq: &[f64], c: f64, power: f64) -> Result<GapReport> {
    if power.is_nan() || c.is_nan() || power <= 0.0 || c <= 0.0 {
        return Err(Error::BadParameters(format!(
            "need C > 0 and N > 0 (got C = {c}, N = {power})"
        )));
    }
    if s_seq.len() < 4 {
        return Err(Error::ExhaustedInput(format!(
            "{} terms, need at least 4",
            s_seq.len()
        )));
    }
    if s_seq.iter().any(|s| *s == 0.0 || !s.is_finite()) {
        return Err(Error::InvalidData(
            "terms must be finite and nonzero".into(),
        ));
    }
    let mut lower_margin = f64::INFINITY;
    let mut lower_worst_index = 0;
    let mut ratios = Vec::with_capacity(s_seq.len() - 1);
    for (n, w) in s_seq.windows(2).enumerate() {
        let gap = (w[1] - w[0]).abs();
        let m = c * gap / w[0].abs().powf(power);
        if m < lower_margin {
            lower_margin = m;
            lower_worst_index = n + 1;
        }
        ratios.push(gap / w[0].abs());
    }
    let logs: Vec<(f64, f64)> = ratios
        .iter()
        .enumerate()
        .filter(|(_, r)| **r > 0.0)
        .map(|(k, r)| (((k + 1) as f64).ln(), r.ln()))
        .collect();
    let (lx, ly): (Vec<f64>, Vec<f64>) = logs.into_iter().unzip();
    let ratio_slope = if lx.len() >= 2 { slope(&lx, &ly) } else { 0.0 };
    let max_r = ratios.iter().copied().fold(0.0, f64::max);
    let ratio_tail = ratios.last().copied().unwrap_or(0.0) / max_r;
    let lower_holds = lower_margin >= 1.0;
    let little_o_holds = ratio_slope < 0.0 && ratio_tail < 0.5;
    Ok(GapReport {
        c,
        power,
        lower_margin,
        lower_worst_index,
        lower_holds,
        ratios,
        ratio_slope,
        ratio_tail,
        little_o_holds,
        holds: lower_holds && little_o_holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub m: f64,
    /// Largest `c` with `ν_n ≥ c(|t_n| + 1)^{−M}` and
    /// `t_{n+1} − t_n ≥ c(|t_n| + 1)^{−M}` on the range.
    pub c_min: f64,
    pub worst_index: usize,
}

/// Polynomial separation of atoms and polynomial lower bounds on weights.
pub fn separation_check(t: &[f64], nu: &[f64], m: f64) -> Result<SeparationReport> {
    if t.len() != nu.len() || t.len() < 2 {
        return Err(Error::InvalidData(
            "need matching t and nu with at least 2 atoms".into(),
        ));
    }
    let mut c_min = f64::INFINITY;
    let mut worst = 0;
    for n in 0..t.len() {
        let w = (t[n].abs() + 1.0).powf(m);
        let mut c = nu[n] * w;
        if n + 1 < t.len() {
            c = c.min((t[n + 1] - t[n]) * w);
        }
        if c < c_min {
            c_min = c;
            worst = n;
        }
    }
    Ok(SeparationReport {
        m,
        c_min,
        worst_index: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_squares_satisfy_both_bounds() {
        let s: Vec<f64> = (1..=200).map(|n| 1.0 / (n * n) as f64).collect();
        let r = synthesis_gap_check(&s, 4.0, 2.0).unwrap();
        // C·gap/s_n² = 4(2n+1)n²/(n+1)² ≥ 3 at n = 1
        assert!((r.lower_margin - 3.0).abs() < 1e-12);
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn geometric_sequence_is_not_little_o() {
        let s: Vec<f64> = (1..=60).map(|n| 0.5f64.powi(n)).collect();
        let r = synthesis_gap_check(&s, 4.0, 2.0).unwrap();
        assert!(!r.little_o_holds);
        assert!(!r.holds);
        assert!(synthesis_gap_check(&s, 4.0, 0.0).is_err());
    }

    #[test]
    fn separation_of_cubes() {
        let t: Vec<f64> = (1..=50).map(|n| (n * n * n) as f64).collect();
        let nu: Vec<f64> = t.iter().map(|x| 1.0 / (x * x)).collect();
        let r = separation_check(&t, &nu, 2.0).unwrap();
        // ν_n(t_n + 1)² = (1 + 1/t_n)², smallest at the last atom
        assert!((r.c_min - (1.0 + 1.0 / t[49]).powi(2)).abs() < 1e-12);
        assert_eq!(r.worst_index, 49);
    }
}
