//! Real-root counting for small dense polynomials via Sturm sequences.
//!
//! Coefficients live at working precision; a magnitude-scaled tolerance
//! decides when a coefficient has effectively vanished, which keeps the
//! polynomial remainder sequence stable for fixture-grade (12-16 digit)
//! inputs.

use crate::context::{PrecisionContext, Real};
use crate::error::{Error, Result};
use rug::Float;

/// Dense polynomial, ascending powers.
#[derive(Debug, Clone)]
pub struct Polynomial {
    pub coeffs: Vec<Real>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Real>) -> Self {
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Real) -> Real {
        let prec = x.prec();
        let mut acc = Float::new(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * i as u32)
            .collect();
        Self { coeffs }
    }

    fn max_abs(&self) -> Real {
        let mut m = Float::new(self.coeffs.first().map_or(64, Float::prec));
        for c in &self.coeffs {
            let a = c.clone().abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Drops trailing coefficients below `tol` in magnitude.
    fn trimmed(mut self, tol: &Real) -> Self {
        while self.coeffs.len() > 1 {
            let last = self.coeffs.last().unwrap();
            if last.clone().abs() < *tol {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        self
    }

    fn is_effectively_zero(&self, tol: &Real) -> bool {
        self.coeffs.iter().all(|c| c.clone().abs() < *tol)
    }

    /// Remainder of self / divisor (leading coefficient of divisor must be
    /// above tolerance; guaranteed by the trimming in the caller).
    fn remainder(&self, divisor: &Self) -> Self {
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        let lead = divisor.coeffs[d].clone();
        while rem.len() > d {
            let k = rem.len() - 1;
            let factor = rem[k].clone() / &lead;
            for i in 0..=d {
                let sub = factor.clone() * &divisor.coeffs[i];
                rem[k - d + i] -= sub;
            }
            rem.pop();
        }
        Self { coeffs: rem }
    }
}

/// Counts distinct real roots of `poly` over the whole line by the sign
/// variation difference of its Sturm chain at -infinity and +infinity.
pub fn count_real_roots(poly: &Polynomial, ctx: &PrecisionContext) -> Result<usize> {
    if poly.degree() == 0 {
        return Ok(0);
    }
    let scale = poly.max_abs();
    if scale.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    // Coefficients below 10^-(digits/2) relative to the largest are noise
    // at fixture resolution and are treated as exact zeros.
    let tol = scale.clone() * ctx.pow10(-((ctx.digits() / 2) as i32));
    let lead = poly.coeffs.last().unwrap();
    if lead.clone().abs() < tol {
        return Err(Error::Degenerate(format!(
            "leading coefficient {} of degree-{} polynomial is below tolerance",
            lead,
            poly.degree()
        )));
    }

    let mut chain = vec![poly.clone().trimmed(&tol)];
    chain.push(poly.derivative().trimmed(&tol));
    loop {
        let k = chain.len();
        if chain[k - 1].degree() == 0 {
            break;
        }
        let rem = chain[k - 2].remainder(&chain[k - 1]);
        if rem.is_effectively_zero(&tol) {
            break;
        }
        let negated = Polynomial::new(rem.coeffs.into_iter().map(|c| -c).collect()).trimmed(&tol);
        chain.push(negated);
        if chain.len() > poly.degree() + 2 {
            break;
        }
    }

    let sign_at = |p: &Polynomial, at_plus_infinity: bool| -> i32 {
        let lead = p.coeffs.last().unwrap();
        if lead.clone().abs() < tol {
            return 0;
        }
        let mut s = if lead.is_sign_positive() { 1 } else { -1 };
        if !at_plus_infinity && p.degree() % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |at_plus_infinity: bool| -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for p in &chain {
            let s = sign_at(p, at_plus_infinity);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    };
    let at_minus = variations(false);
    let at_plus = variations(true);
    Ok(at_minus.saturating_sub(at_plus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn poly(ctx: &PrecisionContext, cs: &[f64]) -> Polynomial {
        Polynomial::new(cs.iter().map(|&c| ctx.from_f64(c)).collect())
    }

    #[test]
    fn counts_quadratic_roots() {
        let c = ctx();
        // x^2 - 1: two real roots
        assert_eq!(count_real_roots(&poly(&c, &[-1.0, 0.0, 1.0]), &c).unwrap(), 2);
        // x^2 + 1: none
        assert_eq!(count_real_roots(&poly(&c, &[1.0, 0.0, 1.0]), &c).unwrap(), 0);
    }

    #[test]
    fn counts_cubic_with_three_roots() {
        let c = ctx();
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        assert_eq!(
            count_real_roots(&poly(&c, &[-6.0, 11.0, -6.0, 1.0]), &c).unwrap(),
            3
        );
    }

    #[test]
    fn mixed_real_complex() {
        let c = ctx();
        // (x^2+1)(x-2) = x^3 - 2x^2 + x - 2: one real root
        assert_eq!(
            count_real_roots(&poly(&c, &[-2.0, 1.0, -2.0, 1.0]), &c).unwrap(),
            1
        );
    }

    #[test]
    fn degenerate_leading_coefficient_reported() {
        let c = ctx();
        let p = poly(&c, &[1.0, 1.0, 1e-40]);
        assert!(matches!(
            count_real_roots(&p, &c),
            Err(Error::Degenerate(_))
        ));
    }
}
