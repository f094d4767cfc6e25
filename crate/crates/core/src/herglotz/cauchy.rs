use serde::Serialize;

use crate::numerics::{CompensatedSum, Poly};
use crate::{Error, Result, C64};

/// Relative guard distance around each pole.
pub const POLE_GUARD: f64 = 1e-8;

/// `F(z) = c₀ + Σ_n (1/(t_n − z) − 1/t_n) w_n` with real, strictly increasing,
/// nonzero poles.
#[derive(Clone, Debug, Serialize)]
pub struct CauchyRepresentation {
    pub poles: Vec<f64>,
    pub residues: Vec<C64>,
    pub constant: C64,
    #[serde(skip)]
    order: Vec<usize>,
}

impl CauchyRepresentation {
    pub fn new(poles: Vec<f64>, residues: Vec<C64>, constant: C64) -> Self {
        assert_eq!(poles.len(), residues.len());
        let mut order: Vec<usize> = (0..poles.len()).collect();
        order.sort_by(|&i, &j| poles[i].abs().total_cmp(&poles[j].abs()));
        CauchyRepresentation {
            poles,
            residues,
            constant,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// Same poles, conjugated residues and constant: `F#(z) = conj F(z̄)`.
    pub fn sharp(&self) -> Self {
        CauchyRepresentation::new(
            self.poles.clone(),
            self.residues.iter().map(|w| w.conj()).collect(),
            self.constant.conj(),
        )
    }

    /// Index of the pole closest to `z` (binary search on the sorted poles).
    pub fn nearest_pole(&self, z: C64) -> usize {
        let x = z.re;
        let k = self.poles.partition_point(|&t| t < x);
        if k == 0 {
            0
        } else if k == self.poles.len() {
            k - 1
        } else if (self.poles[k] - x).abs() < (x - self.poles[k - 1]).abs() {
            k
        } else {
            k - 1
        }
    }

    fn guard(t: f64) -> f64 {
        POLE_GUARD * (1.0 + t.abs())
    }

    /// Value at `z`; refuses points inside the guard disc of a pole.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if !self.is_empty() {
            let k = self.nearest_pole(z);
            let t = self.poles[k];
            if (z - t).norm() <= Self::guard(t) {
                return Err(Error::EvaluationAtPole { z, pole: t });
            }
        }
        Ok(self.eval_unguarded(z))
    }

    pub fn eval_unguarded(&self, z: C64) -> C64 {
        let mut s = CompensatedSum::default();
        s.add(self.constant);
        for &n in &self.order {
            let t = self.poles[n];
            s.add(self.residues[n] * z / (t * (t - z)));
        }
        s.value()
    }

    /// `F'(z) = Σ w_n/(t_n − z)²`.
    pub fn derivative(&self, z: C64) -> C64 {
        self.order
            .iter()
            .map(|&n| {
                let d = self.poles[n] - z;
                self.residues[n] / (d * d)
            })
            .collect::<CompensatedSum>()
            .value()
    }

    /// Regular part at pole `k`: `F(z) = w_k/(t_k − z) + R(z)`; returns `(R, R')`.
    pub fn regular_part(&self, k: usize, z: C64) -> (C64, C64) {
        let mut r = CompensatedSum::default();
        let mut dr = CompensatedSum::default();
        r.add(self.constant);
        r.add(-self.residues[k] / self.poles[k]);
        for &n in &self.order {
            if n == k {
                continue;
            }
            let t = self.poles[n];
            let d = t - z;
            r.add(self.residues[n] * z / (t * d));
            dr.add(self.residues[n] / (d * d));
        }
        (r.value(), dr.value())
    }

    /// Limit at infinity along non-real directions: `c₀ − Σ w_n/t_n`.
    pub fn at_infinity(&self) -> C64 {
        let mut s = CompensatedSum::default();
        s.add(self.constant);
        for &n in &self.order {
            s.add(-self.residues[n] / self.poles[n]);
        }
        s.value()
    }

    pub fn residue_sum(&self) -> C64 {
        self.order
            .iter()
            .map(|&n| self.residues[n])
            .collect::<CompensatedSum>()
            .value()
    }

    /// Numerator `P` of `F = P/A` with `A(z) = Π(1 − z/t_n)`, both in the
    /// scaled variable `u = z/scale`.
    pub fn numerator(&self, scale: f64) -> Poly {
        let tau: Vec<f64> = self.poles.iter().map(|t| t / scale).collect();
        let coef: Vec<C64> = self
            .residues
            .iter()
            .zip(&self.poles)
            .map(|(w, t)| w / *t)
            .collect();
        // Σ_n (w_n/t_n)(u/τ_n) Π_{m≠n}(1 − u/τ_m), by divide and conquer
        let (prod, partial) = partial_fraction_numerator(&tau, &coef);
        let mut p = &prod.scale(self.constant) + &partial;
        // the leading coefficient is known in closed form
        if !tau.is_empty() {
            let lead = self.at_infinity()
                * tau
                    .iter()
                    .fold(C64::new(1.0, 0.0), |acc, t| acc * (-1.0 / t));
            let n = tau.len();
            let mut c = p.coeffs().to_vec();
            c.resize(n + 1, C64::new(0.0, 0.0));
            c[n] = lead;
            p = Poly::new(c);
        }
        p
    }
}

/// `Π(1 − u/τ_m)` and `Σ_n c_n (u/τ_n) Π_{m≠n}(1 − u/τ_m)`.
pub fn partial_fraction_numerator(tau: &[f64], c: &[C64]) -> (Poly, Poly) {
    match tau.len() {
        0 => (Poly::one(), Poly::zero()),
        1 => (
            Poly::linear(C64::new(1.0, 0.0), C64::new(-1.0 / tau[0], 0.0)),
            Poly::linear(C64::new(0.0, 0.0), c[0] / tau[0]),
        ),
        n => {
            let h = n / 2;
            let (pl, ql) = partial_fraction_numerator(&tau[..h], &c[..h]);
            let (pr, qr) = partial_fraction_numerator(&tau[h..], &c[h..]);
            (&pl * &pr, &(&ql * &pr) + &(&pl * &qr))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::c;

    fn two_atom() -> CauchyRepresentation {
        CauchyRepresentation::new(vec![-1.0, 1.0], vec![c(1.0, 0.0), c(1.0, 0.0)], c(1.0, 0.0))
    }

    #[test]
    fn closed_form_two_atom_beta() {
        // β(z) = (z² − 2z − 1)/(z² − 1)
        let f = two_atom();
        let z = c(0.3, 0.7);
        let want = (z * z - 2.0 * z - 1.0) / (z * z - 1.0);
        assert!((f.eval(z).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn residue_normalization() {
        let f = two_atom();
        let h = 1e-6;
        let z = c(1.0 + h, 0.0);
        let r = (z - 1.0) * f.eval(z).unwrap();
        assert!((r + 1.0).norm() < 1e-5);
        assert!(matches!(
            f.eval(c(1.0, 1e-10)),
            Err(Error::EvaluationAtPole { .. })
        ));
    }

    #[test]
    fn numerator_matches_pointwise() {
        let f = CauchyRepresentation::new(
            vec![-3.0, 0.5, 2.0, 7.0],
            vec![c(1.0, 0.2), c(0.3, -1.0), c(2.0, 0.0), c(-0.5, 0.5)],
            c(0.7, -0.1),
        );
        let scale = 2.0;
        let p = f.numerator(scale);
        for z in [c(0.1, 0.4), c(-5.0, 2.0), c(3.0, -1.0)] {
            let a: C64 = f.poles.iter().map(|t| 1.0 - z / t).product();
            let got = p.eval(z / scale) / a;
            assert!((got - f.eval(z).unwrap()).norm() < 1e-13, "{z}");
        }
    }

    #[test]
    fn regular_part_reassembles() {
        let f = two_atom();
        let z = c(0.9, 0.05);
        let (r, _) = f.regular_part(1, z);
        let whole = f.residues[1] / (1.0 - z) + r;
        assert!((whole - f.eval(z).unwrap()).norm() < 1e-14);
    }
}
