//! Finite learning problems, learners as channels, exact joints over
//! (dataset, hypothesis), generalization events, and the closed-form
//! generalization bounds they are checked against.

mod enumerate;
mod problem;
mod table;

pub use enumerate::{
    aggregate_joint_by_type, build_collapsed_joint, build_joint, certify_exchangeable,
    collapsed_generalization_event, dataset_space, erm_learner, generalization_event,
    gibbs_learner, type_space, DatasetSpace, TypeSpace,
};
pub use problem::{GenErrSpec, Learner, LearningProblem, TieBreak, DEFAULT_ENUMERATION_CAP};
pub use table::{baseline_table, TableParams, TableRow};

use crate::error::{Error, Result};
use crate::measures::{conjugate, Nats, Order};
use std::f64::consts::LN_2;

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::invalid_param(format!("eta must be positive, got {eta}")));
    }
    Ok(())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid_param("n must be >= 1"));
    }
    Ok(())
}

fn check_information(i: Nats) -> Result<f64> {
    let v = i.value();
    if v.is_nan() || v < -1e-9 {
        return Err(Error::invalid_param(format!(
            "information value must be nonnegative, got {v}"
        )));
    }
    Ok(v.max(0.0))
}

/// McDiarmid fiber bound for a 1/n-sensitive empirical mean:
/// `P(|L_S(h) - L_P(h)| > eta) <= 2 exp(-2 n eta^2)`.
pub fn mcdiarmid_fiber_bound(n: usize, eta: f64) -> Result<f64> {
    check_n(n)?;
    check_eta(eta)?;
    Ok(2.0 * (-2.0 * n as f64 * eta * eta).exp())
}

/// Hoeffding fiber bound for a sigma-sub-Gaussian loss:
/// `P(|L_S(h) - L_P(h)| > eta) <= 2 exp(-n eta^2 / (2 sigma^2))`.
///
/// Coincides with [`mcdiarmid_fiber_bound`] at `sigma = 1/2`.
pub fn hoeffding_fiber_bound(n: usize, eta: f64, sigma: f64) -> Result<f64> {
    check_n(n)?;
    check_eta(eta)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid_param(format!("sigma must be positive, got {sigma}")));
    }
    Ok(2.0 * (-(n as f64) * eta * eta / (2.0 * sigma * sigma)).exp())
}

/// High-probability generalization bound for the 0-1 loss:
/// `P(E) <= exp(((a-1)/a)(I_a + ln 2 - 2 n eta^2))` for `alpha >= 1`.
///
/// At `alpha = 1` the exponent vanishes and the bound is the vacuous 1.
pub fn cor5_bound(i_alpha: Nats, alpha: Order, n: usize, eta: f64) -> Result<f64> {
    check_n(n)?;
    check_eta(eta)?;
    let i = check_information(i_alpha)?;
    let coef = holder_coefficient(alpha)?;
    Ok((coef * (i + LN_2 - 2.0 * n as f64 * eta * eta)).exp())
}

/// The sub-Gaussian generalization bound:
/// `P(E) <= exp((1/gamma)(I_a + ln 2 - n eta^2 / (2 sigma^2)))`.
///
/// Reduces to [`cor5_bound`] at `sigma = 1/2`.
pub fn cor7_bound(i_alpha: Nats, alpha: Order, n: usize, eta: f64, sigma: f64) -> Result<f64> {
    check_n(n)?;
    check_eta(eta)?;
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::invalid_param(format!("sigma must be positive, got {sigma}")));
    }
    let i = check_information(i_alpha)?;
    let coef = holder_coefficient(alpha)?;
    Ok((coef * (i + LN_2 - n as f64 * eta * eta / (2.0 * sigma * sigma))).exp())
}

/// `(alpha-1)/alpha = 1/gamma`, validated for `alpha >= 1`.
fn holder_coefficient(alpha: Order) -> Result<f64> {
    let gamma = conjugate(alpha)?;
    Ok(if gamma.is_infinite() { 0.0 } else { 1.0 / gamma })
}

/// Smallest integer `m >= (I_a + ln 2 + gamma ln(1/delta)) / (2 eta^2)`,
/// the sample count ensuring `P(gen-err > eta) <= delta` under the 0-1
/// loss. Requires `alpha > 1`; at `alpha = 1` the conjugate is infinite
/// and so is the requirement.
pub fn sample_complexity_bound(i_alpha: Nats, alpha: Order, eta: f64, delta: f64) -> Result<u64> {
    if alpha.is_one() {
        return Err(Error::invalid_param(
            "alpha = 1 gives gamma = inf: the sample requirement is infinite",
        ));
    }
    let gamma = conjugate(alpha)?;
    let spec = GenErrSpec::new(eta, delta)?;
    let i = check_information(i_alpha)?;
    let required = (i + LN_2 + gamma * (1.0 / spec.delta).ln()) / (2.0 * spec.eta * spec.eta);
    Ok(required.ceil() as u64)
}
