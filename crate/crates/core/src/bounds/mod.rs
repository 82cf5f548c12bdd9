//! Change-of-measure bounds: the two-exponent Hölder bound on `P_XY(E)` in
//! terms of `P_X P_Y(E)` and a dependence measure, with its α-divergence,
//! Sibson-MI, and maximal-leakage specializations.
//!
//! Every bound returns a [`BoundReport`] carrying both sides; an infinite
//! right-hand side is a vacuous but valid bound, never an error.

mod event;

pub use event::Event;

use crate::error::{Error, Result};
use crate::measures::logdomain::{ln_mass, log_lp_norm};
use crate::measures::{
    maximal_leakage, renyi_divergence, sibson_mi, HolderPair, JointDistribution, Order,
};

/// Absolute tolerance on `lhs <= rhs` across <= 36-cell accumulations.
pub const HOLDS_TOL: f64 = 1e-9;

/// Which specialization a report came from, with its exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundParams {
    Theorem1 {
        alpha: Order,
        alpha_prime: Order,
        gamma: f64,
        gamma_prime: f64,
    },
    AlphaDivergence {
        alpha: Order,
    },
    SibsonMi {
        alpha: Order,
    },
    MaximalLeakage,
}

/// Left- and right-hand side of one bound evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub params: BoundParams,
    /// `rhs - lhs`; `+inf` for vacuous bounds.
    pub slack: f64,
    /// `lhs <= rhs + HOLDS_TOL`.
    pub holds: bool,
}

impl BoundReport {
    fn new(lhs: f64, rhs: f64, params: BoundParams) -> Self {
        BoundReport {
            lhs,
            rhs,
            params,
            slack: rhs - lhs,
            holds: lhs <= rhs + HOLDS_TOL,
        }
    }
}

/// `P_XY(E)`.
pub fn event_probability(j: &JointDistribution, e: &Event) -> Result<f64> {
    e.check_dims(j)?;
    let mut p = 0.0;
    for x in 0..j.nx() {
        for y in 0..j.ny() {
            if e.contains(x, y) {
                p += j.prob(x, y);
            }
        }
    }
    Ok(p)
}

/// `P_X P_Y(E)` from the derived marginals.
pub fn product_probability(j: &JointDistribution, e: &Event) -> Result<f64> {
    e.check_dims(j)?;
    let px = j.marginal_x();
    let py = j.marginal_y();
    let mut p = 0.0;
    for x in 0..j.nx() {
        for y in 0..j.ny() {
            if e.contains(x, y) {
                p += px.prob(x) * py.prob(y);
            }
        }
    }
    Ok(p)
}

/// `P_X(E_y)` for a single fiber.
pub fn fiber_probability(j: &JointDistribution, e: &Event, y: usize) -> Result<f64> {
    e.check_dims(j)?;
    if y >= j.ny() {
        return Err(Error::IndexOutOfRange {
            index: y,
            size: j.ny(),
        });
    }
    let px = j.marginal_x();
    Ok(e.fiber(y).map(|x| px.prob(x)).sum())
}

/// `esssup_{P_Y} P_X(E_Y)`: the max of `P_X(E_y)` over `y` with `P_Y(y) > 0`.
pub fn esssup_fiber(j: &JointDistribution, e: &Event) -> Result<f64> {
    e.check_dims(j)?;
    let px = j.marginal_x();
    let py = j.marginal_y();
    let mut best = 0.0f64;
    for y in 0..j.ny() {
        if py.prob(y) > 0.0 {
            let pf: f64 = e.fiber(y).map(|x| px.prob(x)).sum();
            best = best.max(pf);
        }
    }
    Ok(best)
}

/// The general two-exponent bound
///
/// ```text
/// P_XY(E) <= || P_X(E_Y)^(1/gamma) ||_{L^gamma'(P_Y)}
///          * || ||dP_XY/dP_XP_Y||_{L^alpha(P_X)} ||_{L^alpha'(P_Y)}
/// ```
///
/// for Hölder pairs `1/alpha + 1/gamma = 1/alpha' + 1/gamma' = 1`, all
/// exponents >= 1. Infinite exponents use the esssup norm; `alpha = 1`
/// turns the first factor into the indicator of a non-null fiber.
pub fn theorem1_bound(j: &JointDistribution, e: &Event, pair: &HolderPair) -> Result<BoundReport> {
    e.check_dims(j)?;
    let px = j.marginal_x();
    let py = j.marginal_y();
    let gamma = pair.gamma();
    let gamma_prime = pair.gamma_prime();

    // ln g(y), the L^gamma(P_X) norm of the fiber indicator
    let mut ln_g = Vec::with_capacity(j.ny());
    for y in 0..j.ny() {
        let pf: f64 = e.fiber(y).map(|x| px.prob(x)).sum();
        ln_g.push(if gamma.is_infinite() {
            if pf > 0.0 {
                0.0
            } else {
                f64::NEG_INFINITY
            }
        } else {
            ln_mass(pf) / gamma
        });
    }

    // ln h(y), the L^alpha(P_X) norm of the density ratio on column y
    let mut ln_h = Vec::with_capacity(j.ny());
    let mut ln_ratio_col = vec![f64::NEG_INFINITY; j.nx()];
    for y in 0..j.ny() {
        let ln_py = ln_mass(py.prob(y));
        for x in 0..j.nx() {
            let m = j.prob(x, y);
            ln_ratio_col[x] = if m > 0.0 {
                m.ln() - px.prob(x).ln() - ln_py
            } else {
                f64::NEG_INFINITY
            };
        }
        ln_h.push(log_lp_norm(&ln_ratio_col, px.mass(), pair.alpha().value()));
    }

    let ln_f1 = log_lp_norm(&ln_g, py.mass(), gamma_prime);
    let ln_f2 = log_lp_norm(&ln_h, py.mass(), pair.alpha_prime().value());
    let rhs = if ln_f1 == f64::NEG_INFINITY {
        // null fibers everywhere force lhs = 0 under absolute continuity
        0.0
    } else {
        (ln_f1 + ln_f2).exp()
    };

    let lhs = event_probability(j, e)?;
    Ok(BoundReport::new(
        lhs,
        rhs,
        BoundParams::Theorem1 {
            alpha: pair.alpha(),
            alpha_prime: pair.alpha_prime(),
            gamma,
            gamma_prime,
        },
    ))
}

fn require_at_least_one(alpha: Order) -> Result<()> {
    if let Some(a) = alpha.as_finite() {
        if a < 1.0 {
            return Err(Error::OrderBelowOne(a));
        }
    }
    Ok(())
}

/// The diagonal choice `alpha' = alpha`:
/// `P_XY(E) <= (P_X P_Y(E))^((a-1)/a) * exp(((a-1)/a) D_a(P_XY || P_X P_Y))`.
pub fn corollary_alpha_div_bound(
    j: &JointDistribution,
    e: &Event,
    alpha: Order,
) -> Result<BoundReport> {
    require_at_least_one(alpha)?;
    let lhs = event_probability(j, e)?;
    let prod = product_probability(j, e)?;
    let params = BoundParams::AlphaDivergence { alpha };
    let rhs = match alpha {
        Order::One => 1.0,
        Order::Infinity => {
            let d = renyi_divergence(
                &j.flatten(),
                &JointDistribution::product(&j.marginal_x(), &j.marginal_y()).flatten(),
                Order::Infinity,
            )?;
            prod * d.value().exp()
        }
        Order::Finite(a) => {
            if prod == 0.0 {
                0.0
            } else {
                let d = renyi_divergence(
                    &j.flatten(),
                    &JointDistribution::product(&j.marginal_x(), &j.marginal_y()).flatten(),
                    alpha,
                )?;
                ((a - 1.0) / a * (prod.ln() + d.value())).exp()
            }
        }
    };
    Ok(BoundReport::new(lhs, rhs, params))
}

/// The `alpha' -> 1` choice:
/// `P_XY(E) <= exp(((a-1)/a) (I_a(X;Y) + ln esssup_{P_Y} P_X(E_Y)))`.
///
/// A null esssup collapses the product form to 0 for `a > 1`; `a = 1` is
/// the trivial bound 1; `a = inf` is the maximal-leakage bound.
pub fn corollary_sibson_bound(
    j: &JointDistribution,
    e: &Event,
    alpha: Order,
) -> Result<BoundReport> {
    require_at_least_one(alpha)?;
    let lhs = event_probability(j, e)?;
    let ess = esssup_fiber(j, e)?;
    let params = BoundParams::SibsonMi { alpha };
    let rhs = match alpha {
        Order::One => 1.0,
        Order::Infinity => ess * maximal_leakage(j).value().exp(),
        Order::Finite(a) => {
            if ess == 0.0 {
                0.0
            } else {
                let i = sibson_mi(j, alpha).value();
                ((a - 1.0) / a * (i + ess.ln())).exp()
            }
        }
    };
    Ok(BoundReport::new(lhs, rhs, params))
}

/// The `alpha -> inf` case:
/// `P_XY(E) <= esssup_{P_Y} P_X(E_Y) * exp(L(X -> Y))`.
pub fn corollary_leakage_bound(j: &JointDistribution, e: &Event) -> Result<BoundReport> {
    let lhs = event_probability(j, e)?;
    let ess = esssup_fiber(j, e)?;
    let rhs = ess * maximal_leakage(j).value().exp();
    Ok(BoundReport::new(lhs, rhs, BoundParams::MaximalLeakage))
}

/// Which one-parameter bound family a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Sibson,
    AlphaDiv,
}

/// Evaluates the chosen bound over an order grid and returns the order with
/// the smallest right-hand side; ties go to the smaller order.
pub fn best_order(
    j: &JointDistribution,
    e: &Event,
    grid: &[Order],
    kind: BoundKind,
) -> Result<(Order, BoundReport)> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut best: Option<(Order, BoundReport)> = None;
    for &alpha in grid {
        let report = match kind {
            BoundKind::Sibson => corollary_sibson_bound(j, e, alpha)?,
            BoundKind::AlphaDiv => corollary_alpha_div_bound(j, e, alpha)?,
        };
        let better = match &best {
            None => true,
            Some((best_alpha, best_report)) => {
                report.rhs < best_report.rhs
                    || (report.rhs == best_report.rhs && alpha.value() < best_alpha.value())
            }
        };
        if better {
            best = Some((alpha, report));
        }
    }
    Ok(best.expect("nonempty grid"))
}
