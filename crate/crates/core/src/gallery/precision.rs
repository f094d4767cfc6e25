//! Extended-precision reals for constructions whose coefficients leave the
//! double range.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

pub type F = FBig<HalfEven, 2>;

pub const DEFAULT_BITS: usize = 256;

/// Context carrying the working precision in bits.
#[derive(Clone, Copy, Debug)]
pub struct Prec(pub usize);

impl Prec {
    pub fn f(&self, x: f64) -> F {
        F::try_from(x)
            .expect("finite input")
            .with_precision(self.0)
            .value()
    }

    pub fn int(&self, n: i64) -> F {
        F::from(n).with_precision(self.0).value()
    }

    pub fn zero(&self) -> F {
        self.int(0)
    }

    pub fn one(&self) -> F {
        self.int(1)
    }
}

pub fn powi(x: &F, n: i64) -> F {
    x.powi(IBig::from(n))
}

pub fn abs(x: &F) -> F {
    if x.sign() == dashu_int::Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn is_negative(x: &F) -> bool {
    x.sign() == dashu_int::Sign::Negative && !x.repr().is_zero()
}

/// `log₁₀|x|`, finite for every nonzero `x` regardless of its exponent.
pub fn log10_abs(x: &F) -> f64 {
    if x.repr().is_zero() {
        return f64::NEG_INFINITY;
    }
    let e = x.repr().exponent() + x.repr().digits() as isize - 1;
    let m = (abs(x) >> e).to_f64().value();
    (m.log2() + e as f64) * std::f64::consts::LOG10_2
}

/// Nearest double, flushing to zero or infinity outside the double range.
pub fn to_f64(x: &F) -> f64 {
    x.to_f64().value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logs_beyond_double_range() {
        let p = Prec(128);
        let x = powi(&p.f(10.0), -700);
        assert!((log10_abs(&x) + 700.0).abs() < 1e-9);
        assert_eq!(to_f64(&x), 0.0);
        let y = -powi(&p.f(2.0), 5000);
        assert!((log10_abs(&y) - 5000.0 * std::f64::consts::LOG10_2).abs() < 1e-9);
        assert!(is_negative(&y));
        assert!((log10_abs(&p.f(0.001)) + 3.0).abs() < 1e-12);
    }
}
