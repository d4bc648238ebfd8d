//! Non-trivial zero ordinates and the symmetric-function identities they
//! feed: power sums and elementary symmetric sums of {1/t_r^2}, the
//! zero-derived Jensen coefficients, the reciprocal-sum identity, and the
//! central-point Hadamard partial product.
//!
//! Zero files follow the public Odlyzko layout: UTF-8 text, one decimal
//! ordinate per line, `#` comments allowed.

use crate::coefficients::CoefficientTable;
use crate::constants::gamma_quarter_zeta_half;
use crate::context::{BoundKind, PrecisionContext, Real, SeriesResult};
use crate::error::{Error, Result};
use crate::numerics::gamma_reference_with_tail;
use rug::ops::Pow;
use rug::Float;
use std::io::BufRead;
use std::path::Path;

/// First hundred ordinates at thirty digits, produced ahead of time by an
/// independent root finder on the completed zeta function.
const FIRST_100: &str = include_str!("../data/zeros_first100.txt");

/// Ascending positive ordinates t_r with provenance and any parse-time
/// warnings (suspicious first ordinate, resorting).
#[derive(Debug, Clone)]
pub struct ZeroTable {
    values: Vec<Real>,
    source: String,
    pub warnings: Vec<String>,
}

impl ZeroTable {
    /// The builtin 100-zero fixture.
    pub fn builtin(ctx: &PrecisionContext) -> Self {
        Self::from_reader(FIRST_100.as_bytes(), usize::MAX, ctx, "builtin".into())
            .expect("builtin fixture parses")
    }

    /// Reads up to `max_count` ordinates from a zero file.
    pub fn load(path: impl AsRef<Path>, max_count: usize, ctx: &PrecisionContext) -> Result<Self> {
        let source = path.as_ref().display().to_string();
        let file = std::fs::File::open(path)?;
        Self::from_reader(std::io::BufReader::new(file), max_count, ctx, source)
    }

    pub fn from_reader(
        reader: impl BufRead,
        max_count: usize,
        ctx: &PrecisionContext,
        source: String,
    ) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            if values.len() >= max_count {
                break;
            }
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let value = ctx.parse(text).map_err(|_| {
                Error::format(format!("line {}: {:?} is not a decimal ordinate", idx + 1, text))
            })?;
            if !value.is_sign_positive() || value.is_zero() {
                return Err(Error::domain(format!(
                    "line {}: ordinates must be positive, got {text}",
                    idx + 1
                )));
            }
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::format(format!("{source}: no ordinates found")));
        }
        let mut warnings = Vec::new();
        if !values.windows(2).all(|w| w[0] <= w[1]) {
            warnings.push("ordinates were not sorted; sorting ascending".into());
            values.sort_by(|a, b| a.partial_cmp(b).expect("ordinates are finite"));
        }
        let t1 = values[0].clone();
        if (t1 - ctx.parse("14.1347")?).abs() > ctx.parse("0.01")? {
            warnings.push(format!(
                "first ordinate {} is far from 14.1347; table may not start at the first zero",
                self_describing(&values[0])
            ));
        }
        Ok(Self {
            values,
            source,
            warnings,
        })
    }

    /// Synthetic table for tests and degenerate cases; values must be
    /// positive and are sorted.
    pub fn from_values(mut values: Vec<Real>, ctx: &PrecisionContext) -> Result<Self> {
        let _ = ctx;
        if values.iter().any(|v| !v.is_sign_positive() || v.is_zero()) {
            return Err(Error::domain("ordinates must be positive"));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("ordinates are finite"));
        Ok(Self {
            values,
            source: "synthetic".into(),
            warnings: Vec::new(),
        })
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Real] {
        &self.values
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Truncated view over the first `m` ordinates.
    pub fn truncated(&self, m: usize) -> Self {
        Self {
            values: self.values[..m.min(self.values.len())].to_vec(),
            source: self.source.clone(),
            warnings: self.warnings.clone(),
        }
    }

    /// Density-integral estimate of sum_{r > M} 1/t_r^2:
    /// (ln(t_M / 2 pi) + 1) / (2 pi t_M). Heuristic.
    pub fn tail_bound(&self, ctx: &PrecisionContext) -> Real {
        let t_last = self.values.last().expect("non-empty table");
        let two_pi = ctx.pi() * 2u32;
        ((t_last.clone() / &two_pi).ln() + 1u32) / (two_pi * t_last)
    }
}

fn self_describing(v: &Real) -> String {
    crate::context::format_decimal(v, 10)
}

/// Power sums p_k = sum (1/t_r^2)^k and elementary symmetric sums e_k of
/// the finite multiset {1/t_r^2}, k = 1..k_max, with the density tail
/// bound for p_1.
#[derive(Debug, Clone)]
pub struct SymmetricSums {
    pub p: Vec<Real>,
    pub e: Vec<Real>,
    pub count: usize,
    pub tail_bound: Real,
}

/// Computes p_k directly (fixed ascending index order) and e_k through
/// Newton's identities rather than nested loops.
pub fn symmetric_sums(zt: &ZeroTable, k_max: usize, ctx: &PrecisionContext) -> Result<SymmetricSums> {
    if k_max == 0 || k_max > 3 {
        return Err(Error::Unsupported(format!(
            "symmetric sums are provided for k = 1..3, requested {k_max}"
        )));
    }
    if zt.count() < k_max {
        return Err(Error::domain(format!(
            "need at least {k_max} zeros, table has {}",
            zt.count()
        )));
    }
    let prec = ctx.prec();
    let mut p = vec![Real::new(prec); k_max];
    for t in zt.values() {
        let inv_t2 = Real::with_val(prec, t).square().recip();
        let mut power = inv_t2.clone();
        for pk in p.iter_mut() {
            *pk += &power;
            power *= &inv_t2;
        }
    }
    // Newton: e1 = p1, 2 e2 = e1 p1 - p2, 3 e3 = e2 p1 - e1 p2 + p3.
    let mut e: Vec<Real> = Vec::with_capacity(k_max);
    e.push(p[0].clone());
    if k_max >= 2 {
        e.push((e[0].clone() * &p[0] - &p[1]) / 2u32);
    }
    if k_max >= 3 {
        e.push((e[1].clone() * &p[0] - e[0].clone() * &p[1] + &p[2]) / 3u32);
    }
    Ok(SymmetricSums {
        p,
        e,
        count: zt.count(),
        tail_bound: zt.tail_bound(ctx),
    })
}

/// Jensen coefficients from zeros: c_n = (-1)^n n! c_0 e_n with
/// c_0 = -Gamma(1/4) zeta(1/2) / (4 pi^{1/4}), truncated at the table.
pub fn jensen_from_zeros(
    zt: &ZeroTable,
    n: usize,
    table: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<Real> {
    if n > 3 {
        return Err(Error::Unsupported(format!(
            "zero-based Jensen coefficients stop at n = 3, requested {n}"
        )));
    }
    let c0 = -(gamma_quarter_zeta_half(table, ctx)
        / (ctx.pi().pow(Float::with_val(ctx.prec(), 0.25)) * 4u32));
    if n == 0 {
        return Ok(c0);
    }
    let sums = symmetric_sums(zt, n, ctx)?;
    let factorial = Float::with_val(ctx.prec(), Float::factorial(n as u32));
    let mut value = c0 * factorial * &sums.e[n - 1];
    if n % 2 == 1 {
        value = -value;
    }
    Ok(value)
}

/// Truncated sum over conjugate zero pairs of 2 sigma / (sigma^2 + t^2)
/// at sigma = 1/2, together with the closed right side
/// 1 + gamma/2 - ln(4 pi)/2 it converges to.
pub fn rho_sum(zt: &ZeroTable, ctx: &PrecisionContext) -> (Real, Real) {
    let prec = ctx.prec();
    let quarter = Float::with_val(prec, 0.25);
    let mut value = Real::new(prec);
    for t in zt.values() {
        value += (quarter.clone() + Real::with_val(prec, t).square()).recip();
    }
    let gamma = gamma_reference_with_tail(ctx, 60)
        .expect("fixed 60-term reference series")
        .value;
    let identity_rhs = Float::with_val(prec, 1) + gamma / 2u32 - (ctx.pi() * 4u32).ln() / 2u32;
    (value, identity_rhs)
}

/// Partial Hadamard product over the first M zeros of
/// t_r^2 / (1/4 + t_r^2); decreasing in M toward c_0. The error bound is
/// the relative tail estimate exp(tail_bound/4) - 1 applied to the value.
pub fn hadamard_c0(zt: &ZeroTable, ctx: &PrecisionContext) -> SeriesResult {
    let prec = ctx.prec();
    let quarter = Float::with_val(prec, 0.25);
    let mut product = Float::with_val(prec, 1);
    for t in zt.values() {
        let t2 = Real::with_val(prec, t).square();
        product *= t2.clone() / (quarter.clone() + t2);
    }
    let (bound, kind) = if zt.count() == 0 {
        // Empty product: every factor is in (0, 1), so 1 bounds the gap.
        (Float::with_val(prec, 1), BoundKind::Heuristic)
    } else {
        let tail = zt.tail_bound(ctx);
        (
            product.clone() * ((tail / 4u32).exp() - 1u32),
            BoundKind::Heuristic,
        )
    };
    SeriesResult::new(product, zt.count(), bound, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::CoefficientTable;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn builtin_fixture_has_hundred_ordinates() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c);
        assert_eq!(zt.count(), 100);
        assert!(zt.warnings.is_empty());
        let t1 = zt.values()[0].clone();
        assert!((t1 - c.parse("14.134725141734693790").unwrap()).abs()
            < c.parse("1e-18").unwrap());
        let t100 = zt.values()[99].clone();
        assert!((t100 - c.parse("236.5242296658162058").unwrap()).abs()
            < c.parse("1e-15").unwrap());
    }

    #[test]
    fn loader_truncates_and_flags() {
        let c = ctx();
        let data = "# comment\n14.134725141734693790457251983562\n21.022039638771554992628479593897\n25.010857580145688763213790992563\n";
        let zt = ZeroTable::from_reader(data.as_bytes(), 2, &c, "mem".into()).unwrap();
        assert_eq!(zt.count(), 2);
        assert!(zt.warnings.is_empty());
    }

    #[test]
    fn loader_rejects_empty_and_garbage_and_negative() {
        let c = ctx();
        let only_comment = "# nothing else\n";
        assert!(matches!(
            ZeroTable::from_reader(only_comment.as_bytes(), 10, &c, "mem".into()),
            Err(Error::Format(_))
        ));
        let garbage = "14.1\nnot-a-number\n";
        match ZeroTable::from_reader(garbage.as_bytes(), 10, &c, "mem".into()) {
            Err(Error::Format(msg)) => assert!(msg.contains("line 2")),
            other => panic!("expected format error, got {other:?}"),
        }
        let negative = "14.1\n-21.0\n";
        assert!(matches!(
            ZeroTable::from_reader(negative.as_bytes(), 10, &c, "mem".into()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn loader_sorts_with_warning() {
        let c = ctx();
        let shuffled = "21.0220396387715549926\n14.1347251417346937904\n";
        let zt = ZeroTable::from_reader(shuffled.as_bytes(), 10, &c, "mem".into()).unwrap();
        assert_eq!(zt.warnings.len(), 1);
        assert!(zt.values()[0] < zt.values()[1]);
    }

    #[test]
    fn loader_warns_on_suspicious_first_ordinate() {
        let c = ctx();
        let zt = ZeroTable::from_reader("21.0220396\n25.0108575\n".as_bytes(), 10, &c, "mem".into())
            .unwrap();
        assert_eq!(zt.warnings.len(), 1);
        assert!(zt.warnings[0].contains("14.1347"));
    }

    #[test]
    fn newton_identities_on_toy_triple() {
        // {1, 2, 3}: inverse squares {1, 1/4, 1/9}.
        let c = ctx();
        let zt = ZeroTable::from_values(
            vec![c.from_u32(1), c.from_u32(2), c.from_u32(3)],
            &c,
        )
        .unwrap();
        let s = symmetric_sums(&zt, 3, &c).unwrap();
        // e2 = 1*(1/4) + 1*(1/9) + (1/4)(1/9) = 7/18 = 0.38889
        let e2_expected = c.from_u32(7) / c.from_u32(18);
        assert!((s.e[1].clone() - &e2_expected).abs() < c.parse("1e-65").unwrap());
        // (p1^2 - p2)/2 must be identical.
        let alt = (s.p[0].clone().square() - &s.p[1]) / 2u32;
        assert!((s.e[1].clone() - alt).abs() < c.parse("1e-68").unwrap());
        // e3 = product of all three inverse squares.
        let e3_expected = c.from_u32(1) / c.from_u32(36);
        assert!((s.e[2].clone() - e3_expected).abs() < c.parse("1e-65").unwrap());
    }

    #[test]
    fn newton_matches_brute_force_on_genuine_zeros() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c).truncated(8);
        let s = symmetric_sums(&zt, 3, &c).unwrap();
        let inv: Vec<Real> = zt
            .values()
            .iter()
            .map(|t| Real::with_val(c.prec(), t).square().recip())
            .collect();
        let mut e2 = c.real();
        let mut e3 = c.real();
        for i in 0..inv.len() {
            for j in (i + 1)..inv.len() {
                e2 += inv[i].clone() * &inv[j];
                for k in (j + 1)..inv.len() {
                    e3 += inv[i].clone() * &inv[j] * &inv[k];
                }
            }
        }
        // Equality at working precision: both routes are short exact sums.
        assert!((s.e[1].clone() - e2).abs() < c.parse("1e-70").unwrap());
        assert!((s.e[2].clone() - e3).abs() < c.parse("1e-70").unwrap());
    }

    #[test]
    fn power_sum_brackets_full_value() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c);
        let s = symmetric_sums(&zt, 1, &c).unwrap();
        // p1(100) is around 0.0200 and p1 + tail brackets 0.0231.
        assert!((s.p[0].clone() - c.parse("0.0200").unwrap()).abs() < c.parse("1e-4").unwrap());
        let full = c.parse("0.023104989").unwrap();
        assert!(s.p[0] < full);
        assert!(s.p[0].clone() + &s.tail_bound > full);
    }

    #[test]
    fn power_sums_increase_with_count() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c);
        let mut prev = c.real();
        for m in [10usize, 25, 50, 100] {
            let s = symmetric_sums(&zt.truncated(m), 1, &c).unwrap();
            assert!(s.p[0] > prev);
            prev = s.p[0].clone();
        }
    }

    #[test]
    fn symmetric_sums_guard_rails() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c).truncated(2);
        assert!(symmetric_sums(&zt, 3, &c).is_err());
        assert!(symmetric_sums(&zt, 0, &c).is_err());
        assert!(symmetric_sums(&zt, 4, &c).is_err());
    }

    #[test]
    fn jensen_from_zeros_matches_fixture_scale() {
        let c = ctx();
        let table = CoefficientTable::builtin(&c);
        let zt = ZeroTable::builtin(&c);
        let c0 = jensen_from_zeros(&zt, 0, &table, &c).unwrap();
        assert!((c0.clone() - c.parse("0.994241556376").unwrap()).abs()
            < c.parse("1e-10").unwrap());
        let c1 = jensen_from_zeros(&zt, 1, &table, &c).unwrap();
        // Truncation gap is bounded by |c0| * tail.
        let gap = (c1.clone() - table.c(1)).abs();
        let allowance = c0.clone().abs() * zt.tail_bound(&c) * 2u32;
        assert!(gap <= allowance, "gap {gap} vs allowance {allowance}");
        assert!(c1.is_sign_negative());
        let c2 = jensen_from_zeros(&zt, 2, &table, &c).unwrap();
        assert!(c2.is_sign_positive());
        let c3 = jensen_from_zeros(&zt, 3, &table, &c).unwrap();
        assert!(c3.is_sign_negative());
        assert!(jensen_from_zeros(&zt, 4, &table, &c).is_err());
    }

    #[test]
    fn rho_sum_increases_and_stays_below_identity() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c);
        let (full, rhs) = rho_sum(&zt, &c);
        assert!((rhs.clone() - c.parse("0.0230957").unwrap()).abs() < c.parse("1e-7").unwrap());
        let mut prev = c.real();
        for m in [10usize, 50, 100] {
            let (v, _) = rho_sum(&zt.truncated(m), &c);
            assert!(v > prev);
            assert!(v < rhs);
            prev = v;
        }
        assert!(full < rhs);
    }

    #[test]
    fn hadamard_product_descends_within_bound() {
        let c = ctx();
        let zt = ZeroTable::builtin(&c);
        let c0 = c.parse("0.994241556376").unwrap();
        let mut prev = c.from_u32(2);
        for m in [1usize, 10, 50, 100] {
            let h = hadamard_c0(&zt.truncated(m), &c);
            assert!(h.value < prev, "product must decrease");
            assert!(h.value > c0, "product approaches c0 from above");
            prev = h.value;
        }
        let h100 = hadamard_c0(&zt, &c);
        assert!((h100.value.clone() - c0).abs() <= h100.error_bound);
        // ln(product) is -p1/4 up to the second-order term p2/32.
        let s = symmetric_sums(&zt, 2, &c).unwrap();
        let log_gap = (h100.value.ln() + s.p[0].clone() / 4u32).abs();
        assert!(log_gap < s.p[1].clone() / 16u32, "gap {log_gap}");
    }

    #[test]
    fn hadamard_empty_product_is_one() {
        let c = ctx();
        let zt = ZeroTable {
            values: Vec::new(),
            source: "empty".into(),
            warnings: Vec::new(),
        };
        let h = hadamard_c0(&zt, &c);
        assert_eq!(h.value, c.from_u32(1));
        assert_eq!(h.terms_used, 0);
    }
}
