//! Arbitrary-precision complex arithmetic.
//!
//! A deliberately small complex type over [`Real`]: just the operations the
//! xi/zeta series and the gamma reflection formula need. Components are
//! expected to stay finite; the public operations that can overflow check
//! and report instead of letting NaN/infinity escape.

use crate::context::{PrecisionContext, Real};
use rug::Float;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexValue {
    pub re: Real,
    pub im: Real,
}

impl ComplexValue {
    pub fn new(re: Real, im: Real) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::new(prec),
        }
    }

    pub fn zero(ctx: &PrecisionContext) -> Self {
        Self {
            re: ctx.real(),
            im: ctx.real(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.clone() + &rhs.re,
            im: self.im.clone() + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: self.re.clone() - &rhs.re,
            im: self.im.clone() - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Literal (ac - bd, ad + bc): exact zeros in either operand
        // propagate exactly, which the reality/symmetry invariants of the
        // critical-line evaluation rely on.
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re.clone() * &rhs.im + self.im.clone() * &rhs.re;
        Self { re, im }
    }

    pub fn mul_real(&self, rhs: &Real) -> Self {
        Self {
            re: self.re.clone() * rhs,
            im: self.im.clone() * rhs,
        }
    }

    pub fn add_real(&self, rhs: &Real) -> Self {
        Self {
            re: self.re.clone() + rhs,
            im: self.im.clone(),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let denom = rhs.re.clone().square() + rhs.im.clone().square();
        let re = (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &denom;
        let im = (self.im.clone() * &rhs.re - self.re.clone() * &rhs.im) / &denom;
        Self { re, im }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// |z| = sqrt(re^2 + im^2).
    pub fn abs(&self) -> Real {
        Real::hypot(self.re.clone(), &self.im)
    }

    /// e^z = e^re (cos im + i sin im).
    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        let (sin, cos) = self.im.clone().sin_cos(Float::new(self.im.prec()));
        Self {
            re: r.clone() * cos,
            im: r * sin,
        }
    }

    /// Principal branch: ln|z| + i atan2(im, re).
    pub fn ln(&self) -> Self {
        Self {
            re: self.abs().ln(),
            im: self.im.clone().atan2(&self.re),
        }
    }

    /// Principal-branch power z^w = exp(w ln z).
    pub fn pow(&self, exponent: &Self) -> Self {
        exponent.mul(&self.ln()).exp()
    }

    /// sin z = sin re cosh im + i cos re sinh im.
    pub fn sin(&self) -> Self {
        let (sin, cos) = self.re.clone().sin_cos(Float::new(self.re.prec()));
        let (sinh, cosh) = self.im.clone().sinh_cosh(Float::new(self.im.prec()));
        Self {
            re: sin * cosh,
            im: cos * sinh,
        }
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_sign_positive() {
            write!(f, "{} + {}i", self.re, self.im)
        } else {
            write!(f, "{} - {}i", self.re, self.im.clone().abs())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn multiplication_keeps_exact_zero_imaginary() {
        let c = ctx();
        let a = ComplexValue::new(c.from_f64(1.5), c.real());
        let b = ComplexValue::new(c.from_f64(-2.25), c.real());
        let p = a.mul(&b);
        assert!(p.im.is_zero());
    }

    #[test]
    fn exp_ln_round_trip() {
        let c = ctx();
        let z = ComplexValue::new(c.from_f64(0.3), c.from_f64(-1.7));
        let w = z.exp().ln();
        let tol = c.parse("1e-60").unwrap();
        assert!((w.re - &z.re).abs() < tol);
        assert!((w.im - &z.im).abs() < tol);
    }

    #[test]
    fn division_golden() {
        let c = ctx();
        // (1 + 2i) / (3 - i) = (1/10)(1 + 7i)
        let a = ComplexValue::new(c.from_u32(1), c.from_u32(2));
        let b = ComplexValue::new(c.from_u32(3), c.from_i64(-1));
        let q = a.div(&b);
        let tol = c.parse("1e-65").unwrap();
        assert!((q.re - c.from_u32(1) / c.from_u32(10)).abs() < tol);
        assert!((q.im - c.from_u32(7) / c.from_u32(10)).abs() < tol);
    }

    #[test]
    fn conjugation_commutes_with_multiplication() {
        let c = ctx();
        let a = ComplexValue::new(c.from_f64(0.25), c.from_f64(3.5));
        let b = ComplexValue::new(c.from_f64(-1.125), c.from_f64(0.75));
        let lhs = a.mul(&b).conj();
        let rhs = a.conj().mul(&b.conj());
        assert_eq!(lhs.re, rhs.re);
        assert_eq!(lhs.im, rhs.im);
    }
}
