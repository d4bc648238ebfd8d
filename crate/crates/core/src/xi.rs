//! Truncated-Taylor evaluation of xi and zeta on the critical strip, the
//! zero-product comparison on the critical line, re-expansion into the
//! power basis, and the CSV grid emitter.
//!
//! The series is even in (s - 1/2), so evaluation runs through Horner in
//! w = (s - 1/2)^2; exact zeros propagate through the complex arithmetic,
//! which makes the functional-equation symmetry and critical-line reality
//! hold bit-for-bit rather than approximately.

use crate::coefficients::{a_from_family, CoefficientTable, Family};
use crate::complex::ComplexValue;
use crate::context::{format_decimal, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::numerics::complex_gamma;
use crate::zeros::ZeroTable;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::io::Write;

/// A coefficient table viewed as the truncated even Taylor series of xi
/// around the central point.
#[derive(Debug, Clone)]
pub struct XiSeries {
    pub table: CoefficientTable,
    /// Largest |s - 1/2| at which the last retained term stays below 1e-6.
    pub validity_radius: Real,
}

impl XiSeries {
    pub fn new(table: CoefficientTable, ctx: &PrecisionContext) -> Self {
        let n = table.max_index();
        // a_2N R^{2N} = 1e-6  =>  R = (1e-6 / a_2N)^(1/2N).
        let validity_radius = if n == 0 {
            ctx.from_u32(0)
        } else {
            (ctx.pow10(-6) / table.a(n))
                .pow(Float::with_val(ctx.prec(), Rational::from((1u32, 2 * n as u32))))
        };
        Self {
            table,
            validity_radius,
        }
    }

    pub fn truncation_order(&self) -> usize {
        self.table.max_index()
    }

    pub fn in_validity(&self, s: &ComplexValue, ctx: &PrecisionContext) -> bool {
        let delta = self.delta(s, ctx);
        delta.abs() <= self.validity_radius
    }

    fn delta(&self, s: &ComplexValue, ctx: &PrecisionContext) -> ComplexValue {
        ComplexValue::new(
            s.re.clone() - Float::with_val(ctx.prec(), 0.5),
            s.im.clone(),
        )
    }

    /// xi(s) = sum a_2n (s - 1/2)^{2n} by Horner in (s - 1/2)^2.
    pub fn xi(&self, s: &ComplexValue, ctx: &PrecisionContext) -> ComplexValue {
        self.xi_from_delta(&self.delta(s, ctx), Family::Taylor, ctx)
    }

    /// Same series read through another coefficient family.
    pub fn xi_by_family(
        &self,
        s: &ComplexValue,
        family: Family,
        ctx: &PrecisionContext,
    ) -> ComplexValue {
        self.xi_from_delta(&self.delta(s, ctx), family, ctx)
    }

    fn xi_from_delta(
        &self,
        delta: &ComplexValue,
        family: Family,
        ctx: &PrecisionContext,
    ) -> ComplexValue {
        let w = delta.square();
        let mut acc = ComplexValue::zero(ctx);
        for n in (0..=self.table.max_index()).rev() {
            let coefficient = a_from_family(&self.table, n, family, ctx);
            acc = acc.mul(&w).add_real(&coefficient);
        }
        acc
    }

    /// zeta(s) = xi(s) pi^{s/2} / ((s - 1) Gamma(1 + s/2)).
    pub fn zeta(&self, s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
        self.zeta_by_family(s, Family::Taylor, ctx)
    }

    pub fn zeta_by_family(
        &self,
        s: &ComplexValue,
        family: Family,
        ctx: &PrecisionContext,
    ) -> Result<ComplexValue> {
        let prec = ctx.prec();
        let s_minus_1 = ComplexValue::new(s.re.clone() - 1u32, s.im.clone());
        if s_minus_1.abs() < ctx.pow10(-6) {
            return Err(Error::Pole(format!(
                "zeta evaluation too close to the pole at s = 1 (|s-1| = {})",
                format_decimal(&s_minus_1.abs(), 3)
            )));
        }
        let half_s = ComplexValue::new(s.re.clone() / 2u32, s.im.clone() / 2u32);
        let gamma_factor = complex_gamma(&half_s.add_real(&Float::with_val(prec, 1)), ctx)?;
        let xi_value = self.xi_by_family(s, family, ctx);
        let pi_power = ComplexValue::from_real(ctx.pi()).pow(&half_s);
        let value = xi_value
            .mul(&pi_power)
            .div(&s_minus_1.mul(&gamma_factor));
        if !value.is_finite() {
            return Err(Error::Pole(format!("zeta({} + {}i) overflowed", s.re, s.im)));
        }
        Ok(value)
    }
}

/// Both sides of the critical-line comparison at height x: the truncated
/// zero product over the first M zeros and the truncated Taylor value
/// 2 xi(1/2 + ix). They agree only in the joint limit; the pair is
/// returned for inspection.
pub fn hadamard_eval(
    x: &Real,
    zt: &ZeroTable,
    xs: &XiSeries,
    ctx: &PrecisionContext,
) -> (Real, Real) {
    let prec = ctx.prec();
    let quarter = Float::with_val(prec, 0.25);
    let x2 = Real::with_val(prec, x).square();
    let mut product = Float::with_val(prec, 1);
    for t in zt.values() {
        let t2 = Real::with_val(prec, t).square();
        product *= (t2.clone() - &x2) / (quarter.clone() + t2);
    }
    // 2 xi(1/2 + ix) = 2 sum (-1)^n a_2n x^{2n}: Horner in -x^2, exactly
    // real by construction.
    let minus_x2 = -x2;
    let mut taylor = Real::new(prec);
    for n in (0..=xs.table.max_index()).rev() {
        taylor = taylor * &minus_x2 + xs.table.a(n);
    }
    (product, taylor * 2u32)
}

/// Exact binomial re-expansion of the truncated series into powers of s:
/// G_j = sum_{2n >= j} a_2n C(2n, j) (-1/2)^{2n-j}, j = 0..j_max.
pub fn power_basis(xs: &XiSeries, j_max: usize, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    let n_max = xs.table.max_index();
    if j_max > 2 * n_max {
        return Err(Error::domain(format!(
            "power basis order {j_max} exceeds series degree {}",
            2 * n_max
        )));
    }
    let prec = ctx.prec();
    let mut out = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let mut acc = Real::new(prec);
        for n in 0..=n_max {
            if 2 * n < j {
                continue;
            }
            // C(2n, j) / 2^{2n-j}, exact; the sign (-1)^{2n-j} = (-1)^j is
            // constant across the sum.
            let factor = Rational::from((
                Integer::from(2 * n as u32).binomial(j as u32),
                Integer::from(1) << (2 * n as u32 - j as u32),
            ));
            acc += Float::with_val(prec, factor) * xs.table.a(n);
        }
        if j % 2 == 1 {
            acc = -acc;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Rectangular evaluation grid; `steps` nodes per axis, both endpoints
/// included.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub re_min: Real,
    pub re_max: Real,
    pub im_min: Real,
    pub im_max: Real,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(re_min: Real, re_max: Real, im_min: Real, im_max: Real, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::domain("grid needs at least 2 steps per axis"));
        }
        if re_min >= re_max || im_min >= im_max {
            return Err(Error::domain("grid ranges must be non-degenerate"));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
            steps,
        })
    }

    /// The default strip window: re in [0, 1], im in [-15, 15].
    pub fn critical_window(steps: usize, ctx: &PrecisionContext) -> Result<Self> {
        Self::new(
            ctx.real(),
            ctx.from_u32(1),
            ctx.from_i64(-15),
            ctx.from_u32(15),
            steps,
        )
    }
}

/// Signed offsets from the axis midpoint: offset_k = (2k - (n-1)) h/2
/// with h the node spacing. Mirrored indices get exactly negated offsets,
/// which is what makes the grid's symmetry checks bit-exact.
fn axis_offsets(min: &Real, max: &Real, steps: usize, prec: u32) -> (Real, Vec<Real>) {
    let center = (min.clone() + max) / 2u32;
    let half_span = (max.clone() - min) / 2u32;
    let denom = Float::with_val(prec, (steps - 1) as u32);
    let offsets = (0..steps)
        .map(|k| {
            let numer = Float::with_val(prec, 2 * k as i64 - (steps as i64 - 1));
            numer * &half_span / &denom
        })
        .collect();
    (center, offsets)
}

/// Summary of an emitted grid, for callers that want the interesting node
/// without re-parsing the CSV.
#[derive(Debug, Clone)]
pub struct GridSummary {
    pub rows: usize,
    pub min_abs: Real,
    pub min_at: (Real, Real),
}

/// Writes the header `re,im,xi_re,xi_im,xi_abs` and steps^2 rows in
/// row-major order (im outer, re inner), full working-precision decimals.
pub fn grid(
    spec: &GridSpec,
    xs: &XiSeries,
    ctx: &PrecisionContext,
    mut out: impl Write,
) -> Result<GridSummary> {
    let prec = ctx.prec();
    let digits = ctx.digits() as usize;
    let (re_center, re_offsets) = axis_offsets(&spec.re_min, &spec.re_max, spec.steps, prec);
    let (im_center, im_offsets) = axis_offsets(&spec.im_min, &spec.im_max, spec.steps, prec);
    // xi depends on s - 1/2; fold the centering into the offset so grids
    // centered on the critical line keep mirror nodes exactly opposite.
    let re_shift = re_center.clone() - Float::with_val(prec, 0.5);

    writeln!(out, "re,im,xi_re,xi_im,xi_abs")?;
    let mut rows = 0usize;
    let mut min_abs: Option<Real> = None;
    let mut min_at = (ctx.real(), ctx.real());
    for im_off in &im_offsets {
        let im = im_center.clone() + im_off;
        for re_off in &re_offsets {
            let re = re_center.clone() + re_off;
            let delta = ComplexValue::new(re_shift.clone() + re_off, im.clone());
            let value = xs.xi_from_delta(&delta, Family::Taylor, ctx);
            if !value.is_finite() {
                return Err(Error::Accuracy {
                    what: format!("non-finite xi at grid node ({re}, {im})"),
                    value: "inf".into(),
                    bound: "-".into(),
                });
            }
            let magnitude = value.abs();
            writeln!(
                out,
                "{},{},{},{},{}",
                format_decimal(&re, digits),
                format_decimal(&im, digits),
                format_decimal(&value.re, digits),
                format_decimal(&value.im, digits),
                format_decimal(&magnitude, digits),
            )?;
            rows += 1;
            if min_abs.as_ref().is_none_or(|m| magnitude < *m) {
                min_abs = Some(magnitude);
                min_at = (re.clone(), im.clone());
            }
        }
    }
    Ok(GridSummary {
        rows,
        min_abs: min_abs.expect("grid has at least four nodes"),
        min_at,
    })
}
