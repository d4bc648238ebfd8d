//! Working-precision context threaded through every computation.
//!
//! All arithmetic in this crate runs on MPFR floats at a bit precision
//! derived from a requested number of significant decimal digits plus a
//! guard margin. The context also carries the derived tolerance
//! `eps = 10^-digits` that convergence checks compare against.

use crate::error::{Error, Result};
use rug::Float;

/// Arbitrary-precision real number (MPFR-backed).
pub type Real = Float;

/// Bits per decimal digit, rounded up generously (log2(10) = 3.3219...).
const BITS_PER_DIGIT: f64 = 3.3220;

/// Extra bits on top of the digit budget so that rounding in long
/// summations never eats into the requested digits.
const SLACK_BITS: u32 = 16;

thread_local! {
    static RANGE_WIDENED: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

/// Widens MPFR's exponent range to the library maximum for the current
/// thread. The default range (|exp| < 2^30) underflows quantities like
/// exp(-pi*e^(4t)) already at t around 4.8, which the moment integrand
/// evaluator must represent as positive values.
pub(crate) fn widen_exponent_range() {
    RANGE_WIDENED.with(|flag| {
        if !flag.get() {
            unsafe {
                gmp_mpfr_sys::mpfr::set_emin(gmp_mpfr_sys::mpfr::get_emin_min());
                gmp_mpfr_sys::mpfr::set_emax(gmp_mpfr_sys::mpfr::get_emax_max());
            }
            flag.set(true);
        }
    });
}

/// Requested decimal precision plus derived tolerances.
///
/// Immutable after construction; cheap to copy and share across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Minimum supported precision; below this the builtin table fixtures
    /// cannot be validated.
    pub const MIN_DIGITS: u32 = 20;

    pub fn new(digits: u32, guard_digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::domain(format!(
                "precision must be at least {} digits, got {digits}",
                Self::MIN_DIGITS
            )));
        }
        widen_exponent_range();
        Ok(Self {
            digits,
            guard_digits,
        })
    }

    /// Context with `digits` significant digits and the default guard.
    pub fn with_digits(digits: u32) -> Result<Self> {
        Self::new(digits, 10)
    }

    /// Significant decimal digits of working precision.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Working precision in bits (digits + guard, converted and padded).
    pub fn prec(&self) -> u32 {
        ((self.digits + self.guard_digits) as f64 * BITS_PER_DIGIT).ceil() as u32 + SLACK_BITS
    }

    /// Unit-in-last-place style tolerance, `10^-digits`.
    pub fn eps(&self) -> Real {
        self.pow10(-(self.digits as i32))
    }

    /// Fresh zero at working precision.
    pub fn real(&self) -> Real {
        Real::new(self.prec())
    }

    pub fn from_u32(&self, v: u32) -> Real {
        Real::with_val(self.prec(), v)
    }

    pub fn from_i64(&self, v: i64) -> Real {
        Real::with_val(self.prec(), v)
    }

    pub fn from_f64(&self, v: f64) -> Real {
        Real::with_val(self.prec(), v)
    }

    /// `10^k` at working precision.
    pub fn pow10(&self, k: i32) -> Real {
        use rug::ops::Pow;
        Real::with_val(self.prec(), 10i32).pow(k)
    }

    /// Pi at working precision.
    pub fn pi(&self) -> Real {
        Real::with_val(self.prec(), rug::float::Constant::Pi)
    }

    /// ln 2 at working precision.
    pub fn ln2(&self) -> Real {
        Real::with_val(self.prec(), rug::float::Constant::Log2)
    }

    /// Parses a decimal string at working precision.
    pub fn parse(&self, text: &str) -> Result<Real> {
        let incomplete = Real::parse(text)
            .map_err(|e| Error::format(format!("invalid decimal literal {text:?}: {e}")))?;
        Ok(Real::with_val(self.prec(), incomplete))
    }

    /// Re-derives a context with more digits, same guard.
    pub fn with_more_digits(&self, extra: u32) -> Self {
        widen_exponent_range();
        Self {
            digits: self.digits + extra,
            guard_digits: self.guard_digits,
        }
    }
}

impl Default for PrecisionContext {
    /// 60 digits + 10 guard digits: Table-grade fixtures carry 12-16 digits
    /// and 40! amplification in the conversions demands headroom.
    fn default() -> Self {
        widen_exponent_range();
        Self {
            digits: 60,
            guard_digits: 10,
        }
    }
}

/// Formats a value as a decimal string with `sig` significant digits,
/// in normalized scientific form (`d.dd...e<k>`). Exact zero prints `0`.
pub fn format_decimal(value: &Real, sig: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    // rug's exponential formatting interprets the precision as the total
    // count of significant digits.
    format!("{:.*e}", sig.max(1), value)
}

/// Whether the truncation/roundoff bound attached to a value is rigorous
/// or merely a heuristic estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Rigorous,
    Heuristic,
}

/// A computed value together with how it was truncated and how far off it
/// can be, so every reported number carries its accuracy.
#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub value: Real,
    pub terms_used: usize,
    pub error_bound: Real,
    pub bound_kind: BoundKind,
}

impl SeriesResult {
    pub fn new(value: Real, terms_used: usize, error_bound: Real, bound_kind: BoundKind) -> Self {
        debug_assert!(error_bound.is_sign_positive() || error_bound.is_zero());
        Self {
            value,
            terms_used,
            error_bound,
            bound_kind,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_sub_minimum_digits() {
        assert!(PrecisionContext::new(19, 0).is_err());
        assert!(PrecisionContext::new(20, 0).is_ok());
    }

    #[test]
    fn eps_is_ten_to_minus_digits() {
        let ctx = PrecisionContext::with_digits(30).unwrap();
        let expected = ctx.parse("1e-30").unwrap();
        assert_eq!(ctx.eps(), expected);
        assert!(ctx.eps().is_sign_positive());
    }

    #[test]
    fn default_is_60_plus_10() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.digits(), 60);
        assert_eq!(ctx.guard_digits(), 10);
        assert!(ctx.prec() >= 232);
    }

    #[test]
    fn format_round_trips_fixture_digits() {
        let ctx = PrecisionContext::default();
        let x = ctx.parse("6.214009727353926e-2").unwrap();
        assert_eq!(format_decimal(&x, 16), "6.214009727353926e-2");
        assert_eq!(format_decimal(&ctx.real(), 12), "0");
    }

    #[test]
    fn widened_range_represents_deep_underflow() {
        let ctx = PrecisionContext::default();
        // exp(-pi * e^20) needs |exponent| around 2.2e9 bits, beyond the
        // default 2^30 range.
        let e20 = ctx.from_u32(20).exp();
        let q = (-(ctx.pi() * e20)).exp();
        assert!(q.is_sign_positive());
        assert!(!q.is_zero());
    }
}
