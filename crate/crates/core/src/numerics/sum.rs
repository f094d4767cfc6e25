//! Compensated (Kahan–Babuška / Neumaier) summation.

use crate::C64;

#[derive(Clone, Copy, Debug, Default)]
pub struct RealCompensatedSum {
    sum: f64,
    comp: f64,
}

impl RealCompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated sum of complex terms.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: RealCompensatedSum,
    im: RealCompensatedSum,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: C64) {
        self.re.add(x.re);
        self.im.add(x.im);
    }

    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<C64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = C64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

impl FromIterator<f64> for RealCompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = RealCompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let terms = [1e16, 1.0, -1e16, 1.0];
        let s: RealCompensatedSum = terms.iter().copied().collect();
        assert_eq!(s.value(), 2.0);
        let naive: f64 = terms.iter().sum();
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn complex_components_are_independent() {
        let s: CompensatedSum = [
            C64::new(1e16, 1.0),
            C64::new(1.0, -1e16),
            C64::new(-1e16, 1e16),
        ]
        .into_iter()
        .collect();
        assert_eq!(s.value(), C64::new(1.0, 1.0));
    }
}
