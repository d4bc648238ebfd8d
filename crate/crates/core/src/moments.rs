//! Turán moments from scratch: quadrature of t^{2n} Phi(t) over the half
//! line, plus an independent theta-series integral for the even Taylor
//! coefficients that cross-checks the whole conversion chain.
//!
//! Phi decays double-exponentially (exp(-pi e^{4t})), so the half-line
//! integral truncates at a small t_max with an envelope bound far below
//! any working tolerance, and composite Gauss-Legendre panels converge
//! once they resolve the steepest transition.

use crate::coefficients::{convert, CoefficientTable, Family, Provenance};
use crate::context::{format_decimal, BoundKind, PrecisionContext, Real, SeriesResult};
use crate::error::{Error, Result};
use crate::quadrature::integrate_family;
use rug::ops::Pow;
use rug::Float;
use std::io::{BufRead, Write};
use std::path::Path;

/// How a moment value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentSource {
    Quadrature,
    Fixture,
}

#[derive(Debug, Clone)]
pub struct MomentRecord {
    pub n: usize,
    pub value: Real,
    pub error_bound: Real,
    pub source: MomentSource,
}

/// Quadrature parameters for the moment integrals.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Upper truncation of the half-line integral in t.
    pub t_max: Real,
    /// Upper truncation of the theta-series integral in x.
    pub x_max: Real,
    /// Composite panel rule order (Gauss-Legendre).
    pub panel_order: usize,
    /// Two successive refinements must agree to this absolute target.
    pub target_abs_error: Real,
    /// Relative cutoff for truncating the theta series.
    pub series_cutoff_rel: Real,
}

impl QuadratureConfig {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Self {
            t_max: ctx.from_f64(3.0),
            x_max: ctx.from_u32(12).exp(),
            panel_order: 48,
            target_abs_error: ctx.pow10(-(ctx.digits() as i32) + 5),
            series_cutoff_rel: ctx.pow10(-(ctx.digits() as i32) - 10),
        }
    }

    /// Envelope of the integrand past t_max; must sit far below the
    /// accuracy target for the truncation to be admissible.
    fn tail_envelope(&self, n: usize, ctx: &PrecisionContext) -> Real {
        let t = &self.t_max;
        let two_pi2 = ctx.pi().square() * 2u32;
        let decay = (-(ctx.pi() * t.clone().mul_add(&ctx.from_u32(4), &ctx.real()).exp())).exp();
        let growth = t.clone().mul_add(&ctx.from_u32(9), &ctx.real()).exp();
        let poly = t.clone().pow(2 * n as u32);
        two_pi2 * decay * growth * poly
    }

    fn check_t_max(&self, n_max: usize, ctx: &PrecisionContext) -> Result<()> {
        let envelope = self.tail_envelope(n_max, ctx);
        let limit = self.target_abs_error.clone() / 10u32;
        if envelope > limit {
            return Err(Error::domain(format!(
                "t_max too small: tail envelope {} exceeds {}",
                format_decimal(&envelope, 3),
                format_decimal(&limit, 3)
            )));
        }
        Ok(())
    }
}

/// The integrand core: Phi(t) = sum_{m>=1} (2 m^4 pi^2 e^{9t} -
/// 3 m^2 pi e^{5t}) exp(-m^2 pi e^{4t}), truncated at the first term whose
/// magnitude drops below `cutoff_rel` times the running sum.
///
/// Every term is positive (the quartic part dominates the quadratic one by
/// at least 2 pi/3 e^{4t}), so the sum is strictly positive wherever it is
/// representable; past t of roughly 10 the value underflows even MPFR's
/// widened exponent range and comes back as +0.
pub fn phi(t: &Real, ctx: &PrecisionContext, cutoff_rel: &Real) -> Result<Real> {
    if t.is_sign_negative() && !t.is_zero() {
        return Err(Error::domain(format!("phi needs t >= 0, got {t}")));
    }
    let prec = ctx.prec();
    let u = Real::with_val(prec, t).exp();
    let e4 = u.clone().pow(4u32);
    let e5 = u.clone().pow(5u32);
    let e9 = u.pow(9u32);
    let pi = ctx.pi();
    let q = (-(pi.clone() * e4)).exp();
    let quartic = Float::with_val(prec, 2) * pi.clone().square() * e9;
    let quadratic = Float::with_val(prec, 3) * pi * e5;

    let mut sum = Real::new(prec);
    for m in 1u32..=1000 {
        let m2 = m * m;
        let weight = quartic.clone() * Float::with_val(prec, m2).square()
            - quadratic.clone() * Float::with_val(prec, m2);
        let term = weight * q.clone().pow(m2);
        sum += &term;
        if m >= 2 && term < cutoff_rel.clone() * &sum {
            break;
        }
    }
    Ok(sum)
}

/// All moments b̂_0..b̂_{n_max} from one shared sweep: Phi is evaluated
/// once per node and reused for every power t^{2n}.
fn moment_family(
    n_max: usize,
    cfg: &QuadratureConfig,
    ctx: &PrecisionContext,
) -> Result<Vec<MomentRecord>> {
    cfg.check_t_max(n_max, ctx)?;
    let zero = ctx.real();
    let integral = integrate_family(
        &zero,
        &cfg.t_max,
        cfg.panel_order,
        &cfg.target_abs_error,
        8,
        20,
        ctx,
        |t, out| {
            let core = phi(t, ctx, &cfg.series_cutoff_rel)?;
            if !core.is_sign_positive() || core.is_zero() {
                return Err(Error::Accuracy {
                    what: format!("Phi must stay positive on quadrature nodes, failed at t = {t}"),
                    value: format_decimal(&core, 6),
                    bound: "0".into(),
                });
            }
            out.clear();
            let t2 = t.clone().square();
            let mut power = Real::with_val(t.prec(), 1);
            for _ in 0..=n_max {
                out.push(power.clone() * &core);
                power *= &t2;
            }
            Ok(())
        },
    )?;
    Ok(integral
        .values
        .into_iter()
        .zip(integral.deltas)
        .enumerate()
        .map(|(n, (value, delta))| MomentRecord {
            n,
            value,
            error_bound: delta + cfg.tail_envelope(n, ctx),
            source: MomentSource::Quadrature,
        })
        .collect())
}

/// b̂_n = integral of t^{2n} Phi(t) over [0, t_max], panel-doubled until
/// two refinements agree to the configured target.
pub fn turan_moment(n: usize, cfg: &QuadratureConfig, ctx: &PrecisionContext) -> Result<MomentRecord> {
    let mut records = moment_family_single(n, cfg, ctx)?;
    Ok(records.pop().expect("single-component family"))
}

fn moment_family_single(
    n: usize,
    cfg: &QuadratureConfig,
    ctx: &PrecisionContext,
) -> Result<Vec<MomentRecord>> {
    cfg.check_t_max(n, ctx)?;
    let zero = ctx.real();
    let integral = integrate_family(
        &zero,
        &cfg.t_max,
        cfg.panel_order,
        &cfg.target_abs_error,
        8,
        20,
        ctx,
        |t, out| {
            let core = phi(t, ctx, &cfg.series_cutoff_rel)?;
            out.clear();
            out.push(t.clone().pow(2 * n as u32) * core);
            Ok(())
        },
    )?;
    Ok(vec![MomentRecord {
        n,
        value: integral.values.into_iter().next().unwrap(),
        error_bound: integral.deltas.into_iter().next().unwrap() + cfg.tail_envelope(n, ctx),
        source: MomentSource::Quadrature,
    }])
}

/// Result of a from-scratch moment run: the filled three-family table plus
/// the per-moment error bounds behind it.
#[derive(Debug, Clone)]
pub struct MomentTable {
    pub table: CoefficientTable,
    pub moments: Vec<MomentRecord>,
}

/// Computes b̂_0..b̂_{n_max} and fills the other two families through the
/// exact conversions.
pub fn moment_table(
    n_max: usize,
    cfg: &QuadratureConfig,
    ctx: &PrecisionContext,
) -> Result<MomentTable> {
    let moments = moment_family(n_max, cfg, ctx)?;
    let values: Vec<Real> = moments.iter().map(|m| m.value.clone()).collect();
    let table = convert(
        &values,
        Family::TuranMoment,
        ctx.digits(),
        Provenance::Quadrature,
        ctx,
    )?;
    Ok(MomentTable { table, moments })
}

/// The even Taylor coefficient a_2n as the theta-series integral over
/// [1, x_max]: 4 sum_m (m^4 pi^2 x^{3/2} - (3/2) m^2 pi x^{1/2})
/// e^{-m^2 pi x} (ln(x)/2)^{2n} / (2n)! x^{-1/4} dx.
///
/// Evaluated through the exact substitution x = v^2 (dx = 2v dv), whose
/// Gaussian-type decay in v the uniform panels can resolve; the node set
/// is disjoint from the t-integral's, keeping this an independent route
/// to the same number.
pub fn a2n_integral(n: usize, cfg: &QuadratureConfig, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.prec();
    let one = ctx.from_u32(1);
    let v_max = cfg.x_max.clone().sqrt();
    let pi = ctx.pi();
    let pi2 = pi.clone().square();
    let inv_fact = Float::with_val(prec, Float::factorial(2 * n as u32)).recip();
    let cutoff = &cfg.series_cutoff_rel;

    let integral = integrate_family(
        &one,
        &v_max,
        cfg.panel_order,
        &cfg.target_abs_error,
        8,
        20,
        ctx,
        |v, out| {
            let sqrt_v = v.clone().sqrt();
            let v32 = v.clone() * &sqrt_v;
            let v72 = v.clone().pow(3u32) * &sqrt_v;
            let q = (-(pi.clone() * v.clone().square())).exp();
            let mut sum = Real::new(prec);
            for m in 1u32..=1000 {
                let m2 = m * m;
                let weight = pi2.clone() * Float::with_val(prec, m2).square() * &v72
                    - Float::with_val(prec, 1.5) * pi.clone() * Float::with_val(prec, m2) * &v32;
                let term = weight * q.clone().pow(m2);
                sum += &term;
                if m >= 2 && term.clone().abs() < cutoff.clone() * sum.clone().abs() {
                    break;
                }
            }
            let log_power = v.clone().ln().pow(2 * n as u32);
            out.clear();
            out.push(Float::with_val(prec, 8) * sum * log_power * &inv_fact);
            Ok(())
        },
    )?;

    // Tail envelope past x_max in the v variable.
    let tail = {
        let decay = (-(pi.clone() * v_max.clone().square())).exp();
        Float::with_val(prec, 8)
            * pi2
            * v_max.clone().pow(3u32)
            * v_max.clone().sqrt()
            * decay
            * v_max.ln().pow(2 * n as u32)
            * inv_fact
    };
    let value = integral.values.into_iter().next().unwrap();
    let delta = integral.deltas.into_iter().next().unwrap();
    Ok(SeriesResult::new(
        value,
        integral.panels,
        delta + tail,
        BoundKind::Heuristic,
    ))
}

/// Alternating moment series sum_m (-1)^m b̂_m x^{2m} / (2m)!; equals one
/// eighth of xi evaluated at 1/2 + ix/2, which the xi tests exercise.
pub fn moment_series(x: &Real, table: &CoefficientTable, ctx: &PrecisionContext) -> Real {
    let prec = ctx.prec();
    let x2 = Real::with_val(prec, x).square();
    let mut acc = Real::new(prec);
    for row in table.rows.iter().rev() {
        let m = row.n as u32;
        let inv_fact = Float::with_val(prec, Float::factorial(2 * m)).recip();
        let mut term = row.bhat.value.clone() * inv_fact;
        if m % 2 == 1 {
            term = -term;
        }
        acc = acc * &x2 + term;
    }
    acc
}

/// Writes the moment cache: `# xi-moment-lab moments digits=<D>` header,
/// then one `n<TAB>value<TAB>error-bound` line per record.
pub fn write_moment_cache(
    mut out: impl Write,
    records: &[MomentRecord],
    digits: u32,
) -> Result<()> {
    writeln!(out, "# xi-moment-lab moments digits={digits}")?;
    for r in records {
        writeln!(
            out,
            "{}\t{}\t{}",
            r.n,
            format_decimal(&r.value, digits as usize),
            format_decimal(&r.error_bound, 3)
        )?;
    }
    Ok(())
}

pub fn write_moment_cache_file(
    path: impl AsRef<Path>,
    records: &[MomentRecord],
    digits: u32,
) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_moment_cache(std::io::BufWriter::new(file), records, digits)
}

/// Reads a moment cache written by [`write_moment_cache`]; returns the
/// records and the digit count announced in the header.
pub fn read_moment_cache(reader: impl BufRead, ctx: &PrecisionContext) -> Result<(Vec<MomentRecord>, u32)> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::format("moment cache is empty"))??;
    let digits: u32 = header
        .strip_prefix("# xi-moment-lab moments digits=")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::format(format!("bad moment cache header: {header:?}")))?;
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::format(format!(
                "moment cache line {}: expected 3 fields",
                idx + 2
            )));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| Error::format(format!("moment cache line {}: bad index", idx + 2)))?;
        records.push(MomentRecord {
            n,
            value: ctx.parse(fields[1])?,
            error_bound: ctx.parse(fields[2])?,
            source: MomentSource::Quadrature,
        });
    }
    Ok((records, digits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::CoefficientTable;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn cfg(c: &PrecisionContext) -> QuadratureConfig {
        QuadratureConfig::new(c)
    }

    #[test]
    fn phi_rejects_negative_argument() {
        let c = ctx();
        let cut = c.parse("1e-70").unwrap();
        assert!(phi(&c.from_f64(-0.5), &c, &cut).is_err());
        assert!(phi(&c.real(), &c, &cut).is_ok());
    }

    #[test]
    fn phi_matches_brute_force_at_zero() {
        // Oracle: the first 50 terms summed plainly at twice the digits.
        let c = ctx();
        let wide = c.with_more_digits(60);
        let pi = wide.pi();
        let mut brute = wide.real();
        for m in 1u32..=50 {
            let m2 = wide.from_u32(m * m);
            let term = (wide.from_u32(2) * pi.clone().square() * m2.clone().square()
                - wide.from_u32(3) * pi.clone() * &m2)
                * (-(pi.clone() * &m2)).exp();
            brute += term;
        }
        let cut = c.parse("1e-70").unwrap();
        let fast = phi(&c.real(), &c, &cut).unwrap();
        let diff = (fast - Real::with_val(c.prec(), &brute)).abs();
        assert!(diff < c.parse("1e-68").unwrap(), "diff {diff}");
    }

    #[test]
    fn phi_truncation_is_insensitive_past_ten_terms() {
        // For t >= 0.1 the 10-term and 50-term sums agree to working
        // precision; brute-force both sides.
        let c = ctx();
        let pi = c.pi();
        for t_val in [0.1f64, 0.5, 1.0] {
            let t = c.from_f64(t_val);
            let u = t.clone().exp();
            let e4 = u.clone().pow(4u32);
            let e5 = u.clone().pow(5u32);
            let e9 = u.pow(9u32);
            let q = (-(pi.clone() * e4)).exp();
            let term_at = |m: u32| {
                let m2 = c.from_u32(m * m);
                (c.from_u32(2) * pi.clone().square() * m2.clone().square() * &e9
                    - c.from_u32(3) * pi.clone() * &m2 * &e5)
                    * q.clone().pow(m * m)
            };
            let sum10: Real = (1..=10).map(term_at).fold(c.real(), |acc, t| acc + t);
            let sum50: Real = (1..=50).map(term_at).fold(c.real(), |acc, t| acc + t);
            let rel = ((sum50.clone() - &sum10) / sum50).abs();
            assert!(rel < c.eps(), "t = {t_val}: rel {rel}");
        }
    }

    #[test]
    fn phi_far_tail_is_negligible_and_positive() {
        let c = ctx();
        let cut = c.parse("1e-70").unwrap();
        let v = phi(&c.from_u32(5), &c, &cut).unwrap();
        assert!(v < c.parse("1e-100").unwrap());
        assert!(v.is_sign_positive() && !v.is_zero());
        // Envelope dominates: 2 pi^2 e^{45} exp(-pi e^{20}).
        let env = c.pi().square() * 2u32 * c.from_u32(45).exp()
            * (-(c.pi() * c.from_u32(20).exp())).exp();
        assert!(v <= env * 2u32);
    }

    #[test]
    fn first_moment_matches_fixture() {
        let c = ctx();
        let record = turan_moment(0, &cfg(&c), &c).unwrap();
        let fixture = c.parse("6.214009727353926e-2").unwrap();
        let rel = ((record.value.clone() - &fixture) / fixture).abs();
        assert!(rel < c.parse("5e-12").unwrap(), "rel {rel}");
        assert!(record.error_bound.is_sign_positive());
    }

    #[test]
    fn moment_table_reproduces_all_columns() {
        let c = ctx();
        let result = moment_table(20, &cfg(&c), &c).unwrap();
        let fixture = CoefficientTable::builtin(&c);
        for n in 0..=20 {
            let rel_b =
                ((result.table.bhat(n).clone() - fixture.bhat(n)) / fixture.bhat(n)).abs();
            let rel_c = ((result.table.c(n).clone() - fixture.c(n)) / fixture.c(n)).abs();
            let rel_a = ((result.table.a(n).clone() - fixture.a(n)) / fixture.a(n)).abs();
            assert!(rel_b < c.parse("5e-12").unwrap(), "b̂_{n} rel {rel_b}");
            // The printed c and a columns carry up to a unit of rounding in
            // their 12th digit relative to their own moment column.
            let tol = c.parse("1e-11").unwrap();
            assert!(rel_c < tol, "c_{n} rel {rel_c}");
            assert!(rel_a < tol, "a_{n} rel {rel_a}");
            assert!(result.moments[n].value.is_sign_positive());
        }
        // Rapid decay of the moment sequence.
        for n in 0..20 {
            assert!(result.moments[n + 1].value < result.moments[n].value);
        }
    }

    #[test]
    fn single_row_table_has_c0_sixteen_bhat0() {
        let c = ctx();
        let result = moment_table(0, &cfg(&c), &c).unwrap();
        let expected = result.table.bhat(0).clone() * 16u32;
        assert_eq!(result.table.rows.len(), 1);
        let diff = (result.table.c(0).clone() - expected).abs();
        assert!(diff < c.parse("1e-60").unwrap());
    }

    #[test]
    fn a2n_integral_matches_direct_values() {
        let c = ctx();
        let q = cfg(&c);
        let a0 = a2n_integral(0, &q, &c).unwrap();
        let fixture = c.parse("0.497120778188").unwrap();
        assert!(((a0.value.clone() - &fixture) / fixture).abs() < c.parse("1e-11").unwrap());
        let a2 = a2n_integral(1, &q, &c).unwrap();
        let fixture = c.parse("1.14859721576e-2").unwrap();
        assert!(((a2.value.clone() - &fixture) / fixture).abs() < c.parse("1e-11").unwrap());
    }

    #[test]
    fn a2n_integral_agrees_with_moment_route() {
        // Independent-route equivalence: the theta integral against
        // 8 * 4^n b̂_n / (2n)! from the t-quadrature, for n <= 10.
        let c = ctx();
        let q = cfg(&c);
        let moments = moment_table(10, &q, &c).unwrap();
        for n in 0..=10usize {
            let via_integral = a2n_integral(n, &q, &c).unwrap();
            let via_moment = moments.table.a(n);
            let diff = (via_integral.value.clone() - via_moment).abs();
            let allowance = via_integral.error_bound.clone()
                + moments.moments[n].error_bound.clone();
            assert!(
                diff <= allowance,
                "n = {n}: diff {diff} exceeds combined bounds {allowance}"
            );
        }
    }

    #[test]
    fn moment_cache_round_trip() {
        let c = ctx();
        let records = vec![
            MomentRecord {
                n: 0,
                value: c.parse("6.214009727353926e-2").unwrap(),
                error_bound: c.parse("1e-55").unwrap(),
                source: MomentSource::Quadrature,
            },
            MomentRecord {
                n: 1,
                value: c.parse("7.178732598482949e-4").unwrap(),
                error_bound: c.parse("1e-55").unwrap(),
                source: MomentSource::Quadrature,
            },
        ];
        let mut buf = Vec::new();
        write_moment_cache(&mut buf, &records, 60).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# xi-moment-lab moments digits=60\n"));
        let (back, digits) = read_moment_cache(std::io::Cursor::new(&buf), &c).unwrap();
        assert_eq!(digits, 60);
        assert_eq!(back.len(), 2);
        assert!((back[0].value.clone() - &records[0].value).abs() < c.parse("1e-58").unwrap());
    }

    #[test]
    fn moment_cache_rejects_bad_header() {
        let c = ctx();
        let data = b"0\t1.0\t1e-3\n".to_vec();
        assert!(matches!(
            read_moment_cache(std::io::Cursor::new(&data), &c),
            Err(Error::Format(_))
        ));
    }
}
