//! Series reconstructions of classical constants from the coefficient
//! families: the Euler-Mascheroni constant three ways, the Lugo constant,
//! Gamma(1/4) zeta(1/2), even-index Bernoulli numbers (series plus an
//! exact-rational oracle), the Gregory-coefficient bridge, and zeta at
//! even integers.

use crate::coefficients::{CoefficientTable, Family};
use crate::context::{BoundKind, PrecisionContext, Real, SeriesResult};
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// gamma = log(4 pi) - 2 + 2^k * S, split into the closed constant part
/// and the truncated series part.
#[derive(Debug, Clone)]
pub struct GammaDecomposition {
    /// log(4 pi) - 2.
    pub constant_part: Real,
    /// The inner sum S before the 2^k prefactor.
    pub inner_sum: SeriesResult,
    pub method: Family,
}

impl GammaDecomposition {
    /// The power of two in front of the inner sum: 16, 128, or 8.
    pub fn prefactor(&self) -> u32 {
        match self.method {
            Family::Taylor => 16,
            Family::TuranMoment => 128,
            Family::Jensen => 8,
        }
    }

    pub fn value(&self) -> Real {
        self.constant_part.clone() + self.inner_sum.value.clone() * self.prefactor()
    }

    pub fn error_bound(&self) -> Real {
        self.inner_sum.error_bound.clone() * self.prefactor()
    }
}

/// The three inner sums, all equal rearrangements:
///   S_a = sum n a_2n / 4^n,
///   S_b = sum n b̂_n / (2n)!,
///   S_c = sum n (-1)^n c_n / (4^n n!).
fn inner_sum(method: Family, table: &CoefficientTable, terms: usize, ctx: &PrecisionContext) -> SeriesResult {
    let prec = ctx.prec();
    let mut sum = Real::new(prec);
    let mut last = Real::new(prec);
    for n in 1..=terms {
        let nf = Float::with_val(prec, n as u32);
        let term = match method {
            Family::Taylor => {
                let scale = Float::with_val(prec, Integer::from(1) << (2 * n as u32));
                nf * table.a(n) / scale
            }
            Family::TuranMoment => {
                let fact = Float::with_val(prec, Float::factorial(2 * n as u32));
                nf * table.bhat(n) / fact
            }
            Family::Jensen => {
                let scale = Float::with_val(prec, Integer::from(1) << (2 * n as u32))
                    * Float::with_val(prec, Float::factorial(n as u32));
                let mut t = nf * table.c(n) / scale;
                if n % 2 == 1 {
                    t = -t;
                }
                t
            }
        };
        last = term.clone();
        sum += term;
    }
    SeriesResult::new(sum, terms, last.abs() * 10u32, BoundKind::Heuristic)
}

fn check_terms(table: &CoefficientTable, terms: usize) -> Result<()> {
    if terms > table.max_index() {
        return Err(Error::domain(format!(
            "series needs table rows 1..{terms}, table stops at {}",
            table.max_index()
        )));
    }
    Ok(())
}

/// The Euler-Mascheroni constant from the chosen coefficient family,
/// truncated after `terms` series terms. `terms = 0` returns just the
/// closed constant part log(4 pi) - 2.
pub fn gamma_series(
    method: Family,
    table: &CoefficientTable,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<GammaDecomposition> {
    check_terms(table, terms)?;
    let constant_part = (ctx.pi() * 4u32).ln() - 2u32;
    Ok(GammaDecomposition {
        constant_part,
        inner_sum: inner_sum(method, table, terms, ctx),
        method,
    })
}

/// The Lugo constant L = -1/2 - gamma + ln 2 as 3/2 - ln(2 pi) - 2^k S,
/// sharing the inner sum with [`gamma_series`].
pub fn lugo(
    method: Family,
    table: &CoefficientTable,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    check_terms(table, terms)?;
    let decomposition = gamma_series(method, table, terms, ctx)?;
    let constant = Float::with_val(ctx.prec(), 1.5) - (ctx.pi() * 2u32).ln();
    let value = constant - decomposition.inner_sum.value.clone() * decomposition.prefactor();
    Ok(SeriesResult::new(
        value,
        decomposition.inner_sum.terms_used,
        decomposition.error_bound(),
        BoundKind::Heuristic,
    ))
}

/// Finite-n evaluation of the double-harmonic limit defining the Lugo
/// constant: sum_{i,j<=n} 1/(i+j) - 2 ln(2) n + ln n. The double sum is
/// folded over the anti-diagonals i + j = k, which counts each reciprocal
/// with its exact multiplicity; convergence to the limit is O(1/n).
pub fn lugo_direct(n: u64, ctx: &PrecisionContext) -> Result<Real> {
    if n < 1 {
        return Err(Error::domain("lugo_direct needs n >= 1"));
    }
    let prec = ctx.prec();
    let mut sum = Real::new(prec);
    for k in 2..=2 * n {
        let multiplicity = if k <= n + 1 { k - 1 } else { 2 * n - k + 1 };
        sum += Float::with_val(prec, multiplicity) / Float::with_val(prec, k);
    }
    let nf = Float::with_val(prec, n);
    Ok(sum - ctx.ln2() * 2u32 * &nf + nf.ln())
}

/// Gamma(1/4) zeta(1/2) = -64 pi^{1/4} b̂_0.
pub fn gamma_quarter_zeta_half(table: &CoefficientTable, ctx: &PrecisionContext) -> Real {
    let quarter_root = ctx.pi().pow(Float::with_val(ctx.prec(), 0.25));
    -(quarter_root * 64u32 * table.bhat(0))
}

/// An even-index Bernoulli number reconstructed from a coefficient family,
/// paired with the exact rational value for comparison.
#[derive(Debug, Clone)]
pub struct BernoulliValue {
    /// The index 2r.
    pub index: usize,
    pub series: SeriesResult,
    pub exact: Rational,
    pub method: Family,
}

/// Evaluates sum_{n=0..terms} f_n X^n where f_n is the a_2n value read off
/// the requested family column and X = (2r - 1/2)^2.
fn taylor_sum_at(
    method: Family,
    table: &CoefficientTable,
    terms: usize,
    x_squared: &Real,
    ctx: &PrecisionContext,
) -> (Real, Real) {
    let prec = ctx.prec();
    let mut sum = Real::new(prec);
    let mut power = Float::with_val(prec, 1);
    let mut last = Real::new(prec);
    for n in 0..=terms {
        let term = crate::coefficients::a_from_family(table, n, method, ctx) * &power;
        last = term.clone();
        sum += term;
        power *= x_squared;
    }
    (sum, last.abs())
}

/// B_{2r} from the truncated Taylor sum at argument 2r - 1/2:
/// B_{2r} = sign (2r)! 2^{1-2r} / (pi^r (2r-1) r!) * sum a_2n (2r-1/2)^{2n},
/// where sign = (-1)^{r-1}. The r = 0 specialization reduces to
/// 2 sum a_2n / 4^n because the sign and the (2r-1) = -1 cancel.
pub fn bernoulli_series(
    r: usize,
    method: Family,
    table: &CoefficientTable,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<BernoulliValue> {
    check_terms(table, terms)?;
    let prec = ctx.prec();
    // (2r - 1/2)^2 as an exact rational.
    let arg = Rational::from((4 * r as i64 - 1, 2));
    let x_squared = Float::with_val(prec, arg.clone() * arg);
    let (sum, last) = taylor_sum_at(method, table, terms, &x_squared, ctx);

    let mut factor = Rational::from((
        Integer::from(Integer::factorial(2 * r as u32)) * 2,
        Integer::from(Integer::factorial(r as u32)) * (Integer::from(1) << (2 * r as u32)),
    )) / Rational::from((2 * r as i64 - 1, 1));
    if r % 2 == 0 {
        factor = -factor;
    }
    let scale = Float::with_val(prec, factor) / ctx.pi().pow(r as u32);
    let value = scale.clone() * &sum;
    Ok(BernoulliValue {
        index: 2 * r,
        series: SeriesResult::new(
            value,
            terms + 1,
            (scale * last).abs() * 10u32,
            BoundKind::Heuristic,
        ),
        exact: bernoulli_exact(2 * r),
        method,
    })
}

/// Exact rational Bernoulli number by the Akiyama-Tanigawa tableau.
/// Convention: B_1 = -1/2.
pub fn bernoulli_exact(k: usize) -> Rational {
    let mut row: Vec<Rational> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        row.push(Rational::from((1, m as u32 + 1)));
        for j in (1..=m).rev() {
            let diff = Rational::from(&row[j - 1] - &row[j]);
            row[j - 1] = diff * Rational::from(j as u32);
        }
    }
    let mut b = row[0].clone();
    if k == 1 {
        b = -b;
    }
    b
}

/// Order-1 Gregory coefficients G_0..G_max from the exact recurrence of
/// z / ln(1+z): sum_{k=0..n} G_k (-1)^{n-k} / (n-k+1) = [n = 0].
pub fn gregory_coefficients(max: usize) -> Vec<Rational> {
    let mut g: Vec<Rational> = Vec::with_capacity(max + 1);
    g.push(Rational::from(1));
    for n in 1..=max {
        let mut acc = Rational::new();
        for (k, gk) in g.iter().enumerate() {
            let mut term = Rational::from(gk / Rational::from((n - k + 1) as u32));
            if (n - k) % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        g.push(-acc);
    }
    g
}

/// Both sides of the bridge identity between the Bernoulli series and the
/// odd root of the Gregory-coefficient expression, reported without any
/// assertion of equality: the residual is the finding.
#[derive(Debug, Clone)]
pub struct GregoryBridge {
    pub lhs: Real,
    pub rhs: Real,
    pub residual: Real,
}

pub fn gregory_bridge(
    r: usize,
    method: Family,
    table: &CoefficientTable,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<GregoryBridge> {
    if r < 1 {
        return Err(Error::domain("gregory_bridge needs r >= 1"));
    }
    let lhs = bernoulli_series(r, method, table, terms, ctx)?.series.value;
    let gregory = gregory_coefficients(2 * r);
    // radicand = -G_{2r} (2r-1) (2r)!
    let radicand = -Rational::from(&gregory[2 * r])
        * Rational::from((2 * r as u32 - 1, 1))
        * Rational::from(Integer::from(Integer::factorial(2 * r as u32)));
    let rhs = real_root(&Float::with_val(ctx.prec(), radicand), 2 * r as u32 - 1, ctx)?;
    let residual = (lhs.clone() - &rhs).abs();
    Ok(GregoryBridge { lhs, rhs, residual })
}

/// k-th real root; odd k takes the signed branch, even k of a negative
/// radicand has no real branch.
fn real_root(radicand: &Real, k: u32, ctx: &PrecisionContext) -> Result<Real> {
    if k % 2 == 0 && radicand.is_sign_negative() {
        return Err(Error::ComplexBranch(format!(
            "{k}-th root of negative radicand {radicand}"
        )));
    }
    let magnitude = radicand
        .clone()
        .abs()
        .pow(Float::with_val(ctx.prec(), Rational::from((1, k))));
    Ok(if radicand.is_sign_negative() {
        -magnitude
    } else {
        magnitude
    })
}

/// Partial sums of 1/2 + sum_{n=1..k} B_{2n}/(2n) in exact rationals,
/// with the index of the smallest-magnitude term. The series diverges;
/// the smallest term marks the optimal truncation point.
#[derive(Debug, Clone)]
pub struct BernoulliPartialSums {
    pub sums: Vec<Rational>,
    /// 1-based index n of the smallest |B_{2n}/(2n)|.
    pub optimal_index: usize,
    pub smallest_term: Rational,
}

pub fn gamma_bernoulli_partial(terms: usize) -> Result<BernoulliPartialSums> {
    if terms < 1 {
        return Err(Error::domain("partial-sum exploration needs N >= 1"));
    }
    let mut sums = Vec::with_capacity(terms);
    let mut acc = Rational::from((1, 2));
    let mut optimal_index = 0;
    let mut smallest = Rational::new();
    for n in 1..=terms {
        let term = bernoulli_exact(2 * n) / Rational::from(2 * n as u32);
        let magnitude = term.clone().abs();
        if optimal_index == 0 || magnitude < smallest {
            smallest = magnitude;
            optimal_index = n;
        }
        acc += term;
        sums.push(acc.clone());
    }
    Ok(BernoulliPartialSums {
        sums,
        optimal_index,
        smallest_term: smallest,
    })
}

/// zeta(2r) = pi^r / ((2r-1) r!) * sum_{n=0..terms} a_2n (2r - 1/2)^{2n}.
pub fn zeta_even(
    r: usize,
    table: &CoefficientTable,
    terms: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    if r < 1 {
        return Err(Error::domain("zeta_even needs r >= 1"));
    }
    check_terms(table, terms)?;
    let prec = ctx.prec();
    let arg = Rational::from((4 * r as i64 - 1, 2));
    let x_squared = Float::with_val(prec, arg.clone() * arg);
    let (sum, last) = taylor_sum_at(Family::Taylor, table, terms, &x_squared, ctx);
    let scale = ctx.pi().pow(r as u32)
        / (Float::with_val(prec, Float::factorial(r as u32)) * (2 * r as u32 - 1));
    let value = scale.clone() * sum;
    Ok(SeriesResult::new(
        value,
        terms + 1,
        (scale * last).abs() * 10u32,
        BoundKind::Heuristic,
    ))
}

/// Closed form zeta(2r) = (-1)^{r-1} (2 pi)^{2r} B_{2r} / (2 (2r)!) from
/// the exact Bernoulli oracle; the independent reference for zeta_even.
pub fn zeta_even_closed_form(r: usize, ctx: &PrecisionContext) -> Real {
    let prec = ctx.prec();
    let b = Float::with_val(prec, bernoulli_exact(2 * r));
    let mut v = (ctx.pi() * 2u32).pow(2 * r as u32) * b
        / (Float::with_val(prec, Float::factorial(2 * r as u32)) * 2u32);
    if r % 2 == 0 {
        v = -v;
    }
    v
}
