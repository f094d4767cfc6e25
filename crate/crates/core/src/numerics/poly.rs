//! Dense polynomials with complex coefficients in the monomial basis.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::numerics::roots;
use crate::{Result, C64};

/// Polynomial `Σ c_k z^k`, coefficients stored in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        Poly { coeffs }
    }

    pub fn constant(c: C64) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        Self::constant(C64::new(0.0, 0.0))
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    /// `c0 + c1 z`.
    pub fn linear(c0: C64, c1: C64) -> Self {
        Poly {
            coeffs: vec![c0, c1],
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Degree ignoring exactly-zero leading coefficients.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != C64::new(0.0, 0.0))
            .unwrap_or(0)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs[self.degree()]
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Divide by `(z − root)` with Horner deflation; returns quotient and remainder.
    pub fn divide_linear(&self, root: C64) -> (Poly, C64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Poly::zero(), self.coeffs[0]);
        }
        let mut q = vec![C64::new(0.0, 0.0); n - 1];
        let mut carry = C64::new(0.0, 0.0);
        for k in (0..n).rev() {
            let v = self.coeffs[k] + carry * root;
            if k == 0 {
                return (Poly::new(q), v);
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Roots via the balanced companion matrix, see [`roots::polynomial_roots`].
    pub fn roots(&self) -> Result<Vec<C64>> {
        roots::polynomial_roots(&self.coeffs[..=self.degree()])
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = C64::new(0.0, 0.0);
        Poly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(zero)
                        + rhs.coeffs.get(k).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}
