//! Polynomial roots through a balanced companion matrix and a complex
//! shifted-QR eigenvalue iteration on upper Hessenberg form.

use crate::{Error, Result, C64};

const RADIX: f64 = 2.0;

/// Square dense matrix, row-major.
#[derive(Clone, Debug)]
pub struct Hessenberg {
    n: usize,
    data: Vec<C64>,
}

impl Hessenberg {
    pub fn zeros(n: usize) -> Self {
        Hessenberg {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.n + j] = v;
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Companion matrix of the monic polynomial with ascending coefficients
    /// `c` (the leading coefficient is divided out).
    pub fn companion(c: &[C64]) -> Self {
        let n = c.len() - 1;
        let lead = c[n];
        let mut h = Hessenberg::zeros(n);
        for j in 0..n {
            h.set(0, j, -c[n - 1 - j] / lead);
        }
        for j in 0..n.saturating_sub(1) {
            h.set(j + 1, j, C64::new(1.0, 0.0));
        }
        h
    }

    /// Parlett–Reinsch diagonal balancing with powers of two; preserves the
    /// Hessenberg pattern and the eigenvalues exactly.
    pub fn balance(&mut self) {
        let n = self.n;
        let sqrdx = RADIX * RADIX;
        let mut done = false;
        while !done {
            done = true;
            for i in 0..n {
                let mut r = 0.0;
                let mut c = 0.0;
                for j in 0..n {
                    if j != i {
                        c += self.get(j, i).l1_norm();
                        r += self.get(i, j).l1_norm();
                    }
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut g = r / RADIX;
                let mut f = 1.0;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let inv = 1.0 / f;
                    for j in 0..n {
                        let v = self.get(i, j) * inv;
                        self.set(i, j, v);
                    }
                    for j in 0..n {
                        let v = self.get(j, i) * f;
                        self.set(j, i, v);
                    }
                }
            }
        }
    }

    /// All eigenvalues of an upper Hessenberg matrix by single-shift complex QR
    /// with Wilkinson shifts and exceptional shifts on stagnation.
    pub fn eigenvalues(mut self) -> Result<Vec<C64>> {
        let n = self.n;
        let mut eig = vec![C64::new(0.0, 0.0); n];
        if n == 0 {
            return Ok(eig);
        }
        let mut hi = n - 1;
        let mut iter = 0usize;
        let mut total = 0usize;
        let max_total = 60 * n.max(4);
        let mut rot: Vec<(f64, C64)> = Vec::with_capacity(n);
        loop {
            if hi == 0 {
                eig[0] = self.get(0, 0);
                break;
            }
            let mut l = hi;
            while l > 0 {
                let sub = self.get(l, l - 1).norm();
                let diag = self.get(l, l).norm() + self.get(l - 1, l - 1).norm();
                if sub <= f64::EPSILON * diag || sub < f64::MIN_POSITIVE {
                    self.set(l, l - 1, C64::new(0.0, 0.0));
                    break;
                }
                l -= 1;
            }
            if l == hi {
                eig[hi] = self.get(hi, hi);
                hi -= 1;
                iter = 0;
                continue;
            }
            iter += 1;
            total += 1;
            if total > max_total {
                return Err(Error::EigensolveFailure(format!(
                    "QR iteration did not converge ({} eigenvalues left)",
                    hi + 1
                )));
            }
            let mu = if iter % 11 == 10 {
                // exceptional shift
                self.get(hi, hi) + C64::new(0.75, 0.3) * self.get(hi, hi - 1).norm()
            } else {
                wilkinson(
                    self.get(hi - 1, hi - 1),
                    self.get(hi - 1, hi),
                    self.get(hi, hi - 1),
                    self.get(hi, hi),
                )
            };
            for k in l..=hi {
                let v = self.get(k, k) - mu;
                self.set(k, k, v);
            }
            rot.clear();
            for k in l..hi {
                let x = self.get(k, k);
                let y = self.get(k + 1, k);
                let (c, s) = givens(x, y);
                rot.push((c, s));
                for j in k..=hi {
                    let u = self.get(k, j);
                    let v = self.get(k + 1, j);
                    self.set(k, j, u * c + s * v);
                    self.set(k + 1, j, -s.conj() * u + v * c);
                }
            }
            for (idx, &(c, s)) in rot.iter().enumerate() {
                let k = l + idx;
                let top = (k + 2).min(hi);
                for i in l..=top {
                    let u = self.get(i, k);
                    let v = self.get(i, k + 1);
                    self.set(i, k, u * c + v * s.conj());
                    self.set(i, k + 1, -u * s + v * c);
                }
            }
            for k in l..=hi {
                let v = self.get(k, k) + mu;
                self.set(k, k, v);
            }
        }
        Ok(eig)
    }
}

fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

/// Eigenvalue of [[a, b], [c, d]] closer to d.
fn wilkinson(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// Roots of `Σ c_k z^k` (ascending, leading coefficient nonzero).
/// Exact zero roots from vanishing low-order coefficients are split off first.
pub fn polynomial_roots(c: &[C64]) -> Result<Vec<C64>> {
    let zero = C64::new(0.0, 0.0);
    let Some(deg) = c.iter().rposition(|x| *x != zero) else {
        return Err(Error::InvalidData(
            "zero polynomial has no finite root set".into(),
        ));
    };
    let low = c.iter().position(|x| *x != zero).unwrap_or(0);
    let mut roots = vec![zero; low];
    let core = &c[low..=deg];
    if core.len() > 1 {
        let mut h = Hessenberg::companion(core);
        h.balance();
        roots.extend(h.eigenvalues()?);
    }
    Ok(roots)
}
