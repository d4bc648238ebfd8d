//! The coefficient algebra connecting the three families: Turán moments
//! b̂_n, Jensen coefficients c_n, and even Taylor coefficients a_2n of the
//! completed zeta function at the central point.
//!
//! Exact relations used throughout:
//!   a_2n = 8 * 4^n * b̂_n / (2n)!
//!   c_n  = 2 * n! * (-1)^n * a_2n
//! so each family determines the other two by exact rational factors.
//! Tables store decimal strings, never rounded binary floats, so fixture
//! digits survive round trips byte-for-byte.

use crate::context::{format_decimal, PrecisionContext, Real};
use crate::error::{Error, Result};
use crate::sturm::{count_real_roots, Polynomial};
use rug::{Float, Integer, Rational};
use std::io::{BufRead, Write};
use std::path::Path;

/// Where a table's numbers came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    BuiltinFixture,
    Quadrature,
    File(String),
}

/// One of the three coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Turán moments b̂_n.
    TuranMoment,
    /// Jensen polynomial coefficients c_n.
    Jensen,
    /// Even Taylor coefficients a_2n.
    Taylor,
}

/// A stored number: its decimal text (authoritative), the parsed value,
/// and how many significant digits the text carries.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub text: String,
    pub value: Real,
    pub digits: u32,
}

impl TableEntry {
    pub fn parse(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        let value = ctx.parse(text)?;
        Ok(Self {
            text: text.to_string(),
            value,
            digits: significant_digits(text),
        })
    }

    pub fn from_value(value: Real, digits: u32) -> Self {
        let text = format_decimal(&value, digits as usize);
        Self {
            text,
            value,
            digits,
        }
    }
}

/// Counts significant digits in a decimal literal.
fn significant_digits(text: &str) -> u32 {
    let mantissa = text.split(['e', 'E']).next().unwrap_or(text);
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let stripped = digits.trim_start_matches('0');
    stripped.len() as u32
}

#[derive(Debug, Clone)]
pub struct CoefficientRow {
    pub n: usize,
    pub bhat: TableEntry,
    pub c: TableEntry,
    pub a: TableEntry,
}

#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub rows: Vec<CoefficientRow>,
    pub provenance: Provenance,
}

/// Table 1 of the underlying moment tabulation: twenty-one rows of
/// (b̂_n, c_n, a_2n), b̂ to 15-16 digits, c and a to 11-12.
const FIXTURE: [(&str, &str, &str); 21] = [
    ("6.214009727353926e-2", "0.994241556376", "0.497120778188"),
    ("7.178732598482949e-4", "-2.29719443152e-2", "1.14859721576e-2"),
    ("2.314725338818463e-5", "4.93808072283e-4", "1.23452018071e-4"),
    ("1.170499895698397e-6", "-9.98826577664e-6", "8.32355481387e-7"),
    ("7.859696022958770e-8", "1.91626874465e-7", "3.99222655135e-9"),
    ("6.47444266092415e-9", "-3.50784618243e-9", "1.46160257601e-11"),
    ("6.248509280628118e-10", "6.15533766557e-11", "4.27454004553e-14"),
    ("6.857113566031334e-11", "-1.03921031437e-12", "1.03096261346e-16"),
    ("8.379562856498463e-12", "1.69325437329e-14", "2.09976980815e-19"),
    ("1.122895900525652e-12", "-2.66944768148e-16", "3.67814109551e-22"),
    ("1.630766572462173e-13", "4.08084512257e-18", "5.62285758732e-25"),
    ("2.543075058368090e-14", "-6.06077541545e-20", "7.59176013038e-28"),
    ("4.226693865498318e-15", "8.75935173682e-22", "9.14334287904e-31"),
    ("7.441357184567353e-16", "-1.23371064104e-23", "9.9061066332e-34"),
    ("1.380660423385153e-16", "1.69556431188e-25", "9.72469343308e-37"),
    ("2.687936596475912e-17", "-2.27655637357e-27", "8.7045996667e-40"),
    ("5.470564386990504e-18", "2.98923338866e-29", "7.14348661116e-43"),
    ("1.160183185841992e-18", "-3.84211459038e-31", "5.40097046858e-46"),
    ("2.556698594979872e-19", "4.83821574529e-33", "3.7784546542e-49"),
    ("5.840019662344811e-20", "-5.97376698863e-35", "2.45540797309e-52"),
    ("1.379672872080269e-20", "7.23728179619e-37", "1.48737634559e-55"),
];

impl CoefficientTable {
    /// The builtin 21-row fixture, parsed at working precision.
    pub fn builtin(ctx: &PrecisionContext) -> Self {
        let rows = FIXTURE
            .iter()
            .enumerate()
            .map(|(n, (b, c, a))| CoefficientRow {
                n,
                bhat: TableEntry::parse(b, ctx).expect("fixture literal"),
                c: TableEntry::parse(c, ctx).expect("fixture literal"),
                a: TableEntry::parse(a, ctx).expect("fixture literal"),
            })
            .collect();
        let table = Self {
            rows,
            provenance: Provenance::BuiltinFixture,
        };
        debug_assert!(table.validate(ctx).is_ok());
        table
    }

    pub fn max_index(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn bhat(&self, n: usize) -> &Real {
        &self.rows[n].bhat.value
    }

    pub fn c(&self, n: usize) -> &Real {
        &self.rows[n].c.value
    }

    pub fn a(&self, n: usize) -> &Real {
        &self.rows[n].a.value
    }

    /// Checks the cross-family identities and the sign pattern at the
    /// resolution the stored digits allow.
    pub fn validate(&self, ctx: &PrecisionContext) -> Result<()> {
        for row in &self.rows {
            let n = row.n;
            if !row.bhat.value.is_sign_positive() || !row.a.value.is_sign_positive() {
                return Err(Error::format(format!(
                    "row {n}: b̂ and a must be positive"
                )));
            }
            let expect_neg = n % 2 == 1;
            if row.c.value.is_sign_negative() != expect_neg {
                return Err(Error::format(format!(
                    "row {n}: c must carry sign (-1)^n"
                )));
            }
            let min_digits = row.bhat.digits.min(row.c.digits).min(row.a.digits).max(6);
            let tol = ctx.pow10(-(min_digits as i32 - 2));
            let a_from_b = derived_a_from_bhat(&row.bhat.value, n, ctx);
            let rel_a = ((a_from_b - &row.a.value) / &row.a.value).abs();
            if rel_a > tol {
                return Err(Error::format(format!(
                    "row {n}: a column inconsistent with b̂ column (rel {rel_a})"
                )));
            }
            let c_from_a = derived_c_from_a(&row.a.value, n, ctx);
            let rel_c = ((c_from_a - &row.c.value) / &row.c.value).abs();
            if rel_c > tol {
                return Err(Error::format(format!(
                    "row {n}: c column inconsistent with a column (rel {rel_c})"
                )));
            }
        }
        Ok(())
    }

    /// Writes `n<TAB>bhat<TAB>c<TAB>a` lines; decimal strings verbatim.
    pub fn write_to(&self, mut out: impl Write) -> Result<()> {
        writeln!(out, "# coefficient table: n\tbhat\tc\ta")?;
        for row in &self.rows {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                row.n, row.bhat.text, row.c.text, row.a.text
            )?;
        }
        Ok(())
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_to(std::io::BufWriter::new(file))
    }

    pub fn read_from(reader: impl BufRead, ctx: &PrecisionContext, source: String) -> Result<Self> {
        let mut rows = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split('\t').collect();
            if fields.len() != 4 {
                return Err(Error::format(format!(
                    "line {}: expected 4 tab-separated fields, got {}",
                    idx + 1,
                    fields.len()
                )));
            }
            let n: usize = fields[0].parse().map_err(|_| {
                Error::format(format!("line {}: bad index {:?}", idx + 1, fields[0]))
            })?;
            if n != rows.len() {
                return Err(Error::format(format!(
                    "line {}: expected row {} but found {}",
                    idx + 1,
                    rows.len(),
                    n
                )));
            }
            let parse = |field: &str, name: &str| {
                TableEntry::parse(field, ctx).map_err(|_| {
                    Error::format(format!(
                        "line {}: {} cell {:?} is not a decimal number",
                        idx + 1,
                        name,
                        field
                    ))
                })
            };
            rows.push(CoefficientRow {
                n,
                bhat: parse(fields[1], "bhat")?,
                c: parse(fields[2], "c")?,
                a: parse(fields[3], "a")?,
            });
        }
        if rows.is_empty() {
            return Err(Error::format("table file contains no data rows"));
        }
        let table = Self {
            rows,
            provenance: Provenance::File(source),
        };
        table.validate(ctx)?;
        Ok(table)
    }

    pub fn read_file(path: impl AsRef<Path>, ctx: &PrecisionContext) -> Result<Self> {
        let source = path.as_ref().display().to_string();
        let file = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(file), ctx, source)
    }
}

fn factorial(n: u32, prec: u32) -> Real {
    Float::with_val(prec, Float::factorial(n))
}

/// a_2n = 8 * 4^n / (2n)! * b̂_n, the rational factor applied exactly.
fn derived_a_from_bhat(bhat: &Real, n: usize, ctx: &PrecisionContext) -> Real {
    let factor = Rational::from((
        Integer::from(8) << (2 * n as u32),
        Integer::from(Integer::factorial(2 * n as u32)),
    ));
    Float::with_val(ctx.prec(), factor) * bhat
}

/// c_n = 2 n! (-1)^n a_2n.
fn derived_c_from_a(a: &Real, n: usize, ctx: &PrecisionContext) -> Real {
    let mut factor = Rational::from(Integer::from(Integer::factorial(n as u32))) * Rational::from(2);
    if n % 2 == 1 {
        factor = -factor;
    }
    Float::with_val(ctx.prec(), factor) * a
}

fn derived_a_from_c(c: &Real, n: usize, ctx: &PrecisionContext) -> Real {
    let mut factor = Rational::from((
        Integer::from(1),
        Integer::from(Integer::factorial(n as u32)) * 2,
    ));
    if n % 2 == 1 {
        factor = -factor;
    }
    Float::with_val(ctx.prec(), factor) * c
}

fn derived_bhat_from_a(a: &Real, n: usize, ctx: &PrecisionContext) -> Real {
    let factor = Rational::from((
        Integer::from(Integer::factorial(2 * n as u32)),
        Integer::from(8) << (2 * n as u32),
    ));
    Float::with_val(ctx.prec(), factor) * a
}

/// Builds a full table from one fully populated family.
pub fn convert(
    values: &[Real],
    family: Family,
    digits: u32,
    provenance: Provenance,
    ctx: &PrecisionContext,
) -> Result<CoefficientTable> {
    if values.is_empty() {
        return Err(Error::domain("cannot convert an empty coefficient column"));
    }
    let rows = values
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let (bhat, a) = match family {
                Family::TuranMoment => (v.clone(), derived_a_from_bhat(v, n, ctx)),
                Family::Taylor => (derived_bhat_from_a(v, n, ctx), v.clone()),
                Family::Jensen => {
                    let a = derived_a_from_c(v, n, ctx);
                    (derived_bhat_from_a(&a, n, ctx), a)
                }
            };
            let c = match family {
                Family::Jensen => v.clone(),
                _ => derived_c_from_a(&a, n, ctx),
            };
            CoefficientRow {
                n,
                bhat: TableEntry::from_value(bhat, digits),
                c: TableEntry::from_value(c, digits),
                a: TableEntry::from_value(a, digits),
            }
        })
        .collect();
    Ok(CoefficientTable { rows, provenance })
}

/// The even Taylor coefficient a_2n as read through the chosen family
/// column: the a column directly, 8 * 4^n b̂_n / (2n)!, or
/// (-1)^n c_n / (2 n!). Algebraically identical; numerically they differ
/// by the rounding of the stored digits.
pub fn a_from_family(
    table: &CoefficientTable,
    n: usize,
    family: Family,
    ctx: &PrecisionContext,
) -> Real {
    let prec = ctx.prec();
    match family {
        Family::Taylor => table.a(n).clone(),
        Family::TuranMoment => derived_a_from_bhat(table.bhat(n), n, ctx),
        Family::Jensen => {
            let mut v =
                table.c(n).clone() / (Float::with_val(prec, Float::factorial(n as u32)) * 2u32);
            if n % 2 == 1 {
                v = -v;
            }
            v
        }
    }
}

/// d^{2n}/dx^{2n} xi(1/2 + ix) at x = 0, by the formula matching `source`:
/// (2n)! a_2n, or (-1)^n (2n)!/(2 n!) c_n, or 8 * 4^n b̂_n.
pub fn even_derivative(
    n: usize,
    table: &CoefficientTable,
    source: Family,
    ctx: &PrecisionContext,
) -> Result<Real> {
    if n > table.max_index() {
        return Err(Error::domain(format!(
            "derivative order {n} exceeds table range {}",
            table.max_index()
        )));
    }
    let prec = ctx.prec();
    Ok(match source {
        Family::Taylor => factorial(2 * n as u32, prec) * table.a(n),
        Family::TuranMoment => {
            Float::with_val(prec, Integer::from(8) << (2 * n as u32)) * table.bhat(n)
        }
        Family::Jensen => {
            let mut v = factorial(2 * n as u32, prec) / (factorial(n as u32, prec) * 2u32)
                * table.c(n);
            if n % 2 == 1 {
                v = -v;
            }
            v
        }
    })
}

/// Outcome of one Turán inequality check.
#[derive(Debug, Clone)]
pub struct TuranMargin {
    /// c_n^2 - c_{n-1} c_{n+1}.
    pub margin: Real,
    pub holds: bool,
    /// b̂_n^2 - (2n-1)/(2n+1) b̂_{n-1} b̂_{n+1}, which must give the same
    /// verdict.
    pub moment_margin: Real,
}

pub fn turan_inequality(
    n: usize,
    table: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<TuranMargin> {
    if n == 0 || n + 1 > table.max_index() {
        return Err(Error::domain(format!(
            "Turán inequality index {n} out of range 1..{}",
            table.max_index().saturating_sub(1)
        )));
    }
    let margin = table.c(n).clone().square() - table.c(n - 1).clone() * table.c(n + 1);
    let ratio = Float::with_val(
        ctx.prec(),
        Rational::from((2 * n as u32 - 1, 2 * n as u32 + 1)),
    );
    let moment_margin =
        table.bhat(n).clone().square() - ratio * table.bhat(n - 1).clone() * table.bhat(n + 1);
    let holds = margin.is_sign_positive() && !margin.is_zero();
    let moment_holds = moment_margin.is_sign_positive() && !moment_margin.is_zero();
    if holds != moment_holds {
        return Err(Error::Accuracy {
            what: format!("Turán verdicts disagree between c and b̂ forms at n = {n}"),
            value: format_decimal(&margin, 6),
            bound: format_decimal(&moment_margin, 6),
        });
    }
    Ok(TuranMargin {
        margin,
        holds,
        moment_margin,
    })
}

/// Degree-d, shift-0 Jensen polynomial sum_h c_h C(d,h) x^h.
#[derive(Debug, Clone)]
pub struct JensenPolynomial {
    pub degree: usize,
    pub coefficients: Vec<Real>,
}

pub fn jensen_polynomial(
    d: usize,
    table: &CoefficientTable,
    ctx: &PrecisionContext,
) -> Result<JensenPolynomial> {
    if d == 0 || d > table.max_index() {
        return Err(Error::domain(format!(
            "Jensen degree {d} outside available coefficients 1..{}",
            table.max_index()
        )));
    }
    let coefficients = (0..=d)
        .map(|h| {
            let binom = Integer::from(d as u32).binomial(h as u32);
            Float::with_val(ctx.prec(), binom) * table.c(h)
        })
        .collect();
    Ok(JensenPolynomial {
        degree: d,
        coefficients,
    })
}

/// Counts real roots by Sturm sequence; a polynomial is hyperbolic when
/// every root is real.
pub fn hyperbolicity_check(
    poly: &JensenPolynomial,
    ctx: &PrecisionContext,
) -> Result<(usize, bool)> {
    let count = count_real_roots(&Polynomial::new(poly.coefficients.clone()), ctx)?;
    Ok((count, count == poly.degree))
}
