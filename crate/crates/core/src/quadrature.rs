//! Composite Gauss-Legendre quadrature with panel doubling.
//!
//! The integrands in this crate are smooth with double-exponential decay,
//! so a fixed-order Gauss-Legendre rule on uniform panels converges once
//! the panel width resolves the integrand's steepest transition. The
//! driver doubles the panel count until two successive refinements agree
//! to the requested absolute target.
//!
//! Several integrals share one expensive core factor (the theta-series
//! sum) times a cheap per-order weight, so the driver integrates a whole
//! family of components from a single sweep over the nodes. Panels are
//! accumulated in ascending index order, making results independent of
//! any evaluation parallelism.

use crate::context::{PrecisionContext, Real};
use crate::error::{Error, Result};
use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug)]
pub struct GaussLegendreRule {
    pub nodes: Vec<Real>,
    pub weights: Vec<Real>,
}

fn rule_cache() -> &'static Mutex<HashMap<(usize, u32), Arc<GaussLegendreRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<GaussLegendreRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_with_deriv(n: usize, x: &Real) -> (Real, Real) {
    let prec = x.prec();
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = x.clone();
    for k in 2..=n {
        // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
        let next = (x.clone() * &p * (2 * k as u32 - 1) - &p_prev * Float::with_val(prec, k as u32 - 1))
            / Float::with_val(prec, k as u32);
        p_prev = std::mem::replace(&mut p, next);
    }
    // (1-x^2) P_n' = n (P_{n-1} - x P_n)
    let one_minus_x2 = Float::with_val(prec, 1) - x.clone().square();
    let deriv = (p_prev - x.clone() * &p) * Float::with_val(prec, n as u32) / one_minus_x2;
    (p, deriv)
}

impl GaussLegendreRule {
    /// Computes (or fetches from cache) the n-point rule at `prec` bits.
    pub fn get(order: usize, prec: u32) -> Arc<Self> {
        assert!(order >= 2, "Gauss-Legendre order must be at least 2");
        if let Some(rule) = rule_cache().lock().unwrap().get(&(order, prec)) {
            return Arc::clone(rule);
        }
        let rule = Arc::new(Self::compute(order, prec));
        rule_cache()
            .lock()
            .unwrap()
            .insert((order, prec), Arc::clone(&rule));
        rule
    }

    fn compute(order: usize, prec: u32) -> Self {
        let work = prec + 64;
        let pi = Float::with_val(work, rug::float::Constant::Pi);
        let n = order;
        let mut nodes = vec![Float::new(prec); n];
        let mut weights = vec![Float::new(prec); n];
        // Newton from the Chebyshev-like seed; only the positive half is
        // solved, the other half is mirrored so symmetry is exact.
        for i in 0..(n + 1) / 2 {
            let seed = (pi.clone() * Float::with_val(work, i as u32)
                + Float::with_val(work, 0.75) * &pi)
                / Float::with_val(work, n as f64 + 0.5);
            let mut x = seed.cos();
            let mut deriv = Float::new(work);
            for _ in 0..200 {
                let (value, d) = legendre_with_deriv(n, &x);
                deriv = d;
                let step = value / &deriv;
                x -= &step;
                let converged = step.is_zero()
                    || step.get_exp().unwrap_or(i32::MIN) < x.get_exp().unwrap_or(0).saturating_sub(work as i32 - 4);
                if converged {
                    let (_, d) = legendre_with_deriv(n, &x);
                    deriv = d;
                    break;
                }
            }
            let w = Float::with_val(work, 2)
                / ((Float::with_val(work, 1) - x.clone().square()) * deriv.square());
            let x_rounded = Float::with_val(prec, &x);
            let w_rounded = Float::with_val(prec, &w);
            nodes[i] = -x_rounded.clone();
            nodes[n - 1 - i] = x_rounded;
            weights[i] = w_rounded.clone();
            weights[n - 1 - i] = w_rounded;
        }
        if n % 2 == 1 {
            nodes[n / 2] = Float::new(prec);
        }
        Self { nodes, weights }
    }
}

/// Result of one converged family integration.
#[derive(Debug)]
pub struct FamilyIntegral {
    /// Integral estimate per component.
    pub values: Vec<Real>,
    /// |last refinement delta| per component.
    pub deltas: Vec<Real>,
    /// Panels used by the accepted refinement.
    pub panels: usize,
}

/// Integrates a family of components sharing node evaluations over [a, b].
///
/// `eval(t, out)` must fill `out` with the integrand values of every
/// component at `t`. Panel counts double from `initial_panels` until every
/// component's successive-refinement delta drops to `target_abs`, or until
/// `max_doublings` refinements have been spent, in which case an accuracy
/// error carrying the best value and bound is returned.
pub fn integrate_family<F>(
    a: &Real,
    b: &Real,
    order: usize,
    target_abs: &Real,
    initial_panels: usize,
    max_doublings: usize,
    ctx: &PrecisionContext,
    mut eval: F,
) -> Result<FamilyIntegral>
where
    F: FnMut(&Real, &mut Vec<Real>) -> Result<()>,
{
    let rule = GaussLegendreRule::get(order, ctx.prec() + 32);
    let mut previous: Option<Vec<Real>> = None;
    let mut panels = initial_panels;
    let mut scratch: Vec<Real> = Vec::new();

    for _ in 0..=max_doublings {
        let width = (b.clone() - a) / Float::with_val(ctx.prec() + 32, panels as u32);
        let half = width.clone() / 2u32;
        let mut totals: Vec<Real> = Vec::new();
        for j in 0..panels {
            let left = a.clone() + width.clone() * Float::with_val(ctx.prec() + 32, j as u32);
            let mid = left + &half;
            for (node, weight) in rule.nodes.iter().zip(&rule.weights) {
                let t = mid.clone() + half.clone() * node;
                eval(&t, &mut scratch)?;
                if totals.is_empty() {
                    totals = vec![ctx.real(); scratch.len()];
                }
                for (total, v) in totals.iter_mut().zip(&scratch) {
                    *total += v.clone() * weight;
                }
            }
        }
        for total in &mut totals {
            *total *= &half;
        }

        if let Some(prev) = previous {
            let deltas: Vec<Real> = totals
                .iter()
                .zip(&prev)
                .map(|(now, old)| (now.clone() - old).abs())
                .collect();
            if deltas.iter().all(|d| d <= target_abs) {
                return Ok(FamilyIntegral {
                    values: totals,
                    deltas,
                    panels,
                });
            }
        }
        previous = Some(totals);
        panels *= 2;
    }

    let best = previous.expect("at least one refinement ran");
    Err(Error::Accuracy {
        what: format!("quadrature did not converge after {max_doublings} doublings"),
        value: crate::context::format_decimal(&best[0], ctx.digits() as usize),
        bound: crate::context::format_decimal(target_abs, 6),
    })
}
