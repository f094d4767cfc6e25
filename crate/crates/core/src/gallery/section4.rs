//! Finite truncation of the incompleteness construction: lacunary poles,
//! the Herglotz pair `(A₀, B₀)`, the sparse product `S`, the perturbation
//! `γ`, the coefficients `d_n` of `g/A` and the weights of `E = A − iB`.

use serde::Serialize;

use super::precision::{abs, is_negative, log10_abs, powi, to_f64, Prec, DEFAULT_BITS, F};
use crate::herglotz::DeBrangesPair;
use crate::{Error, Result, C64};

/// Relative tolerance of the residue identity.
pub const RESIDUE_TOL: f64 = 1e-8;
/// Exponents `N` in the decay checks.
pub const DECAY_POWERS: [i32; 2] = [1, 2];
const MAX_V_NUDGES: usize = 20;
const COLLISION_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct DecayCheck {
    /// `"off_n1"`: `2^n |d_n| t_n^N` over `n ∉ N₁`; `"n1"`: `2^k |d_{n_k}| t_{n_k}^N`.
    pub family: String,
    pub power: i32,
    pub log10_values: Vec<f64>,
    /// Index (1-based) of the maximum, after which the sequence should decrease.
    pub peak_index: usize,
    /// First index after the peak where the sequence increases.
    pub violation: Option<usize>,
    /// Least-squares slope of the values after the peak, per index step.
    pub trend_slope: f64,
    /// Off `N₁`: strictly decreasing after the peak. On `N₁`: negative trend
    /// after the peak (the finite product `S` only has `J` zeros, so local
    /// increases occur where `|S(t_{n_k})|` gains a factor).
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sandwich {
    /// `min |g/A|·|S| / (|Im z|/(|z|²+1))²` over the grid.
    pub c1: f64,
    /// `max |g/A|·|S| · (|Im z|/(|z|²+1))²` over the grid.
    pub c2: f64,
    pub samples: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section4Pipeline {
    pub k: usize,
    pub precision_bits: usize,
    /// Number of spectrum points used (indices `1..=n_K`).
    pub range: usize,
    /// `n_k`, 1-based.
    pub n1: Vec<usize>,
    pub v: Vec<f64>,
    pub v_nudges: usize,
    /// Zero `s_k` of `B₀` in `(t_{n_k}, t_{n_{k+1}})`.
    pub s: Vec<f64>,
    pub one_zero_per_gap: bool,
    /// Indices `k_j` of the zeros kept in `S`.
    pub sparse: Vec<usize>,
    /// `m_j`, 1-based.
    pub n2: Vec<usize>,
    pub q_sum: f64,
    pub d_log10: Vec<f64>,
    pub d_negative: Vec<bool>,
    pub nu_log10: Vec<f64>,
    /// `|lim (z − t_n) g(z)/A(z) − d_n| / |d_n|` per index.
    pub residue_errors: Vec<f64>,
    pub residue_max: f64,
    pub residue_pass: bool,
    pub decay: Vec<DecayCheck>,
    pub sandwich: Sandwich,
    /// `Σ_{n ∉ N₂} ν_n` over the range.
    pub nu_sum_off_n2: f64,
    /// Partial sums of `Σ_j 1/t_{m_j}`.
    pub inv_t_n2_partial: Vec<f64>,
    /// Atoms whose weight is representable in double precision.
    pub debranges_atoms: usize,
    /// Largest sampled `|E#/E|` in the upper half-plane (below 1).
    pub debranges_max_theta: f64,
}

/// `t_n = n³`, `n = 1..=len`.
pub fn default_spectrum(len: usize) -> Vec<f64> {
    (1..=len).map(|n| (n as f64).powi(3)).collect()
}

/// Greedy doubling subsequence starting at the first admissible index.
fn doubling(t: &[f64], allowed: impl Fn(usize) -> bool, limit: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, &x) in t.iter().enumerate() {
        if out.len() == limit {
            break;
        }
        if allowed(i) && out.last().is_none_or(|&j| x > 2.0 * t[j]) {
            out.push(i);
        }
    }
    out
}

struct Herglotz<'a> {
    poles: &'a [F],
    v: &'a [F],
}

impl Herglotz<'_> {
    /// `B₀/A₀ = Σ v_k/(t_{n_k} − x)` with the sum of moduli.
    fn eval(&self, x: &F) -> (F, F) {
        let mut s = self.poles[0].clone() - &self.poles[0];
        let mut a = s.clone();
        for (t, v) in self.poles.iter().zip(self.v) {
            let term = v.clone() / (t.clone() - x);
            a += abs(&term);
            s += term;
        }
        (s, a)
    }
}

fn decay(family: &str, power: i32, log10_values: Vec<f64>, labels: &[usize]) -> DecayCheck {
    let peak = log10_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let violation = (peak + 1..log10_values.len())
        .find(|&i| log10_values[i] > log10_values[i - 1])
        .map(|i| labels[i]);
    let post = &log10_values[peak..];
    let trend_slope = if post.len() >= 2 {
        let n = post.len() as f64;
        let mx = (n - 1.0) / 2.0;
        let my = post.iter().sum::<f64>() / n;
        let sxy: f64 = post
            .iter()
            .enumerate()
            .map(|(i, y)| (i as f64 - mx) * (y - my))
            .sum();
        let sxx: f64 = (0..post.len()).map(|i| (i as f64 - mx).powi(2)).sum();
        sxy / sxx
    } else {
        0.0
    };
    let holds = if family == "off_n1" {
        violation.is_none() && (post.len() >= 2 || log10_values.len() == 1)
    } else {
        post.len() >= 3 && trend_slope < 0.0
    };
    DecayCheck {
        family: family.into(),
        power,
        log10_values,
        peak_index: labels.get(peak).copied().unwrap_or(0),
        violation,
        trend_slope,
        holds,
    }
}

pub fn section4_build(t_seq: &[f64], k: usize, bits: usize) -> Result<Section4Pipeline> {
    let pipe = build(t_seq, k, bits)?;
    if let Some(c) = pipe.decay.iter().find(|c| c.family == "off_n1" && !c.holds) {
        return Err(Error::DecayViolation {
            index: c.violation.unwrap_or(c.peak_index),
            detail: format!("2^n |d_n| t_n^{} increases after its peak", c.power),
        });
    }
    Ok(pipe)
}

fn build(t_seq: &[f64], k: usize, bits: usize) -> Result<Section4Pipeline> {
    if k < 2 {
        return Err(Error::BadParameters("K must be at least 2".into()));
    }
    if t_seq.first().is_none_or(|&t| t < 1.0) || t_seq.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::BadParameters(
            "spectrum must be strictly increasing with t_1 >= 1".into(),
        ));
    }
    let p = Prec(bits.max(53));
    let n1 = doubling(t_seq, |_| true, k);
    if n1.len() < k {
        return Err(Error::ExhaustedInput(format!(
            "only {} lacunary points in a spectrum of length {}",
            n1.len(),
            t_seq.len()
        )));
    }
    let range = n1[k - 1] + 1;
    let t_f = &t_seq[..range];
    let in_n1 = {
        let mut m = vec![false; range];
        n1.iter().for_each(|&i| m[i] = true);
        m
    };
    let n2 = doubling(t_f, |i| !in_n1[i], usize::MAX);
    let t: Vec<F> = t_f.iter().map(|&x| p.f(x)).collect();
    let poles: Vec<F> = n1.iter().map(|&i| t[i].clone()).collect();
    let off: Vec<usize> = (0..range).filter(|&i| !in_n1[i]).collect();

    // v_k with B₀(t_n) ≠ 0 off N₁ and B₀(0) ≠ 0
    let mut v_nudges = 0;
    let v: Vec<F> = loop {
        let v: Vec<F> = (1..=k)
            .map(|j| p.f(1.5 + 0.25 * (j as f64).sin() + 1e-3 * v_nudges as f64))
            .collect();
        let h = Herglotz {
            poles: &poles,
            v: &v,
        };
        let collides = off
            .iter()
            .map(|&i| &t[i])
            .chain(std::iter::once(&p.zero()))
            .any(|x| {
                let (s, a) = h.eval(x);
                to_f64(&abs(&s)) <= COLLISION_TOL * to_f64(&a)
            });
        if !collides {
            break v;
        }
        v_nudges += 1;
        if v_nudges > MAX_V_NUDGES {
            return Err(Error::BisectionFailure("no admissible v_k found".into()));
        }
    };
    let h = Herglotz {
        poles: &poles,
        v: &v,
    };

    // zeros of B₀: B₀/A₀ increases from −∞ to +∞ on each gap
    let mut s: Vec<F> = Vec::with_capacity(k - 1);
    let mut one_zero_per_gap = true;
    let half = p.f(0.5);
    for j in 0..k - 1 {
        let (mut lo, mut hi) = (poles[j].clone(), poles[j + 1].clone());
        let (mut moved_lo, mut moved_hi) = (false, false);
        for _ in 0..p.0 + 16 {
            let mid = (lo.clone() + &hi) * &half;
            if mid <= lo || mid >= hi {
                break;
            }
            if is_negative(&h.eval(&mid).0) {
                lo = mid;
                moved_lo = true;
            } else {
                hi = mid;
                moved_hi = true;
            }
        }
        // a sign change was bracketed; monotonicity makes the zero unique
        one_zero_per_gap &= moved_lo && moved_hi;
        let root = (lo + hi) * &half;
        s.push(root);
    }
    let sparse: Vec<usize> = (0..)
        .map(|j| 1usize << j)
        .take_while(|&kj| kj < k)
        .collect();
    let s_kept: Vec<F> = sparse.iter().map(|&kj| s[kj - 1].clone()).collect();
    let s_eval = |x: &F| -> F {
        s_kept
            .iter()
            .fold(p.one(), |acc, sk| acc * (p.one() - x.clone() / sk))
    };

    let pk: Vec<F> = v
        .iter()
        .zip(&poles)
        .map(|(vk, tk)| vk.clone() / s_eval(tk))
        .collect();
    let two = p.f(2.0);
    let mut q: Vec<F> = vec![p.zero(); range];
    for &i in &off {
        let dist = poles
            .iter()
            .map(|tk| abs(&(t[i].clone() - tk)))
            .min_by(|a, b| a.partial_cmp(b).expect("finite"))
            .expect("K >= 2");
        q[i] = powi(&(two.clone() * &t[i]), -((i + 1) as i64)) * dist;
    }
    let q_sum = to_f64(&off.iter().fold(p.zero(), |acc, &i| acc + &q[i]));

    // coefficients of g/A = Σ d_n/(z − t_n)
    let mut d: Vec<F> = vec![p.zero(); range];
    for (j, &i) in n1.iter().enumerate() {
        let corr = off.iter().fold(p.zero(), |acc, &m| {
            acc + q[m].clone() / (poles[j].clone() - &t[m])
        });
        d[i] = -(pk[j].clone() * (p.one() - corr));
    }
    for &i in &off {
        let sum = pk.iter().zip(&poles).fold(p.zero(), |acc, (pj, tj)| {
            acc + pj.clone() / (tj.clone() - &t[i])
        });
        d[i] = -(q[i].clone() * sum);
    }

    // residues of (B₀/A₀)·γ/S evaluated from the factors
    let gamma_at = |x: &F, skip: usize| -> F {
        off.iter()
            .filter(|&&m| m != skip)
            .fold(p.one(), |acc, &m| acc + q[m].clone() / (t[m].clone() - x))
    };
    let residue_errors: Vec<f64> = (0..range)
        .map(|i| {
            let res = if in_n1[i] {
                let j = n1.iter().position(|&x| x == i).expect("member");
                -(v[j].clone() * gamma_at(&t[i], usize::MAX)) / s_eval(&t[i])
            } else {
                -(q[i].clone() * h.eval(&t[i]).0) / s_eval(&t[i])
            };
            let err = abs(&(res - &d[i])) / abs(&d[i]);
            to_f64(&err)
        })
        .collect();
    let residue_max = residue_errors.iter().copied().fold(0.0, f64::max);

    let d_log10: Vec<f64> = d.iter().map(log10_abs).collect();
    let log2 = std::f64::consts::LOG10_2;
    let mut decay_checks = Vec::new();
    for &power in &DECAY_POWERS {
        let off_vals: Vec<f64> = off
            .iter()
            .map(|&i| (i + 1) as f64 * log2 + d_log10[i] + power as f64 * t_f[i].log10())
            .collect();
        let labels: Vec<usize> = off.iter().map(|&i| i + 1).collect();
        decay_checks.push(decay("off_n1", power, off_vals, &labels));
        let n1_vals: Vec<f64> = n1
            .iter()
            .enumerate()
            .map(|(j, &i)| (j + 1) as f64 * log2 + d_log10[i] + power as f64 * t_f[i].log10())
            .collect();
        let labels: Vec<usize> = (1..=k).collect();
        decay_checks.push(decay("n1", power, n1_vals, &labels));
    }

    let in_n2 = |i: usize| n2.contains(&i);
    let nu_log10: Vec<f64> = (0..range)
        .map(|i| {
            if in_n1[i] {
                2.0 * d_log10[i]
            } else if in_n2(i) {
                0.0
            } else {
                (i + 1) as f64 * log2 + 2.0 * d_log10[i]
            }
        })
        .collect();
    let nu_sum_off_n2 = (0..range)
        .filter(|&i| !in_n2(i))
        .map(|i| 10f64.powf(nu_log10[i]))
        .sum();
    let inv_t_n2_partial: Vec<f64> = n2
        .iter()
        .scan(0.0, |acc, &i| {
            *acc += 1.0 / t_f[i];
            Some(*acc)
        })
        .collect();

    let sandwich = sandwich_check(
        &n1.iter().map(|&i| t_f[i]).collect::<Vec<_>>(),
        &v.iter().map(to_f64).collect::<Vec<_>>(),
        &off.iter()
            .map(|&i| (t_f[i], to_f64(&q[i])))
            .collect::<Vec<_>>(),
        t_f[range - 1],
    );

    let (poles_e, nu_e): (Vec<f64>, Vec<f64>) = (0..range)
        .filter(|&i| nu_log10[i] > -300.0)
        .map(|i| (t_f[i], 10f64.powf(nu_log10[i])))
        .unzip();
    let e = DeBrangesPair {
        poles: poles_e,
        nu: nu_e,
    };
    let debranges_max_theta = [
        C64::new(0.0, 1.0),
        C64::new(1.5, 0.2),
        C64::new(-3.0, 2.0),
        C64::new(10.0, 5.0),
    ]
    .iter()
    .map(|&z| e.theta(z).norm())
    .fold(0.0, f64::max);

    Ok(Section4Pipeline {
        k,
        precision_bits: p.0,
        range,
        n1: n1.iter().map(|i| i + 1).collect(),
        v: v.iter().map(to_f64).collect(),
        v_nudges,
        s: s.iter().map(to_f64).collect(),
        one_zero_per_gap,
        sparse,
        n2: n2.iter().map(|i| i + 1).collect(),
        q_sum,
        d_negative: d.iter().map(is_negative).collect(),
        d_log10,
        nu_log10,
        residue_pass: residue_max <= RESIDUE_TOL,
        residue_errors,
        residue_max,
        decay: decay_checks,
        sandwich,
        nu_sum_off_n2,
        inv_t_n2_partial,
        debranges_atoms: e.poles.len(),
        debranges_max_theta,
    })
}

/// `|g/A|·|S| = |B₀/A₀|·|γ|` against the Herglotz envelopes on a grid
/// symmetric in `Im z`.
fn sandwich_check(poles: &[f64], v: &[f64], q: &[(f64, f64)], t_max: f64) -> Sandwich {
    let xs: Vec<f64> = (-40i32..=40)
        .map(|j| {
            let r = (t_max * 2.0).powf(f64::from(j.abs()) / 40.0) - 1.0;
            if j < 0 {
                -r
            } else {
                r
            }
        })
        .collect();
    let ys = [0.01, 0.1, 1.0, 10.0, 100.0, 1e4];
    let mut c1 = f64::INFINITY;
    let mut c2: f64 = 0.0;
    let mut samples = 0;
    for &x in &xs {
        for &y0 in &ys {
            for y in [y0, -y0] {
                let z = C64::new(x, y);
                let b: C64 = poles.iter().zip(v).map(|(t, v)| *v / (t - z)).sum();
                let g: C64 = C64::new(1.0, 0.0) + q.iter().map(|(t, q)| *q / (t - z)).sum::<C64>();
                let m = (b * g).norm();
                let env = y.abs() / (z.norm_sqr() + 1.0);
                c1 = c1.min(m / (env * env));
                c2 = c2.max(m * env * env);
                samples += 1;
            }
        }
    }
    Sandwich {
        c1,
        c2,
        samples,
        holds: c1 > 0.0 && c2.is_finite(),
    }
}

/// Largest `K ≤ k_max` whose build passes the residue check.
pub fn section4_max_k(
    t_seq: &[f64],
    k_max: usize,
    bits: usize,
) -> Result<(usize, Vec<(usize, f64)>)> {
    let mut best = 0;
    let mut trail = Vec::new();
    for k in 2..=k_max {
        match build(t_seq, k, bits) {
            Ok(pipe) => {
                trail.push((k, pipe.residue_max));
                if !pipe.residue_pass {
                    break;
                }
                best = k;
            }
            Err(Error::ExhaustedInput(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok((best, trail))
}

pub fn default_bits() -> usize {
    DEFAULT_BITS
}
