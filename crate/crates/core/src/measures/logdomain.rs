//! Log-domain accumulation kernel.
//!
//! Every sum of exponentials in this crate goes through [`log_sum_exp`]
//! (max-shifted), and every zero-mass convention is resolved here rather
//! than at the call sites:
//!
//! - a zero weight drops its term entirely (0 * anything := 0),
//! - `ln 0 = -inf` terms vanish under the exponential,
//! - a `+inf` term forces the whole sum to `+inf`.

/// Natural log of a mass value; `ln 0 := -inf`.
#[inline]
pub fn ln_mass(p: f64) -> f64 {
    if p > 0.0 {
        p.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Max-shifted log-sum-exp: `ln sum_i exp(terms[i])`.
///
/// An empty slice (or all `-inf`) yields `-inf`; any `+inf` term yields `+inf`.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        // all -inf (empty sum) or a +inf term dominating
        return max;
    }
    let sum: f64 = terms.iter().map(|&t| (t - max).exp()).sum();
    max + sum.ln()
}

/// `ln sum_i p_i^alpha q_i^(1-alpha)` for finite `alpha > 0`, `alpha != 1`.
///
/// Conventions:
/// - `p_i = 0` contributes nothing,
/// - `p_i > 0, q_i = 0` contributes nothing when `alpha < 1` and forces
///   `+inf` when `alpha > 1` (absolute-continuity failure).
///
/// Returns `-inf` when every term vanishes (disjoint supports, `alpha < 1`).
pub fn log_power_integral(p: &[f64], q: &[f64], alpha: f64) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    let mut terms = Vec::with_capacity(p.len());
    for (&pi, &qi) in p.iter().zip(q.iter()) {
        if pi <= 0.0 {
            continue;
        }
        if qi <= 0.0 {
            if alpha > 1.0 {
                return f64::INFINITY;
            }
            continue;
        }
        terms.push(alpha * pi.ln() + (1.0 - alpha) * qi.ln());
    }
    log_sum_exp(&terms)
}

/// Log of the weighted L^p norm `( sum_i w_i * exp(ln_v[i])^p )^(1/p)`.
///
/// `p` may be `+inf`, in which case this is the max of `ln_v` over indices
/// with positive weight (the finite-alphabet esssup). Zero-weight terms are
/// dropped; a `+inf` value with positive weight forces `+inf`.
pub fn log_lp_norm(ln_values: &[f64], weights: &[f64], p: f64) -> f64 {
    debug_assert_eq!(ln_values.len(), weights.len());
    debug_assert!(p >= 1.0);
    if p.is_infinite() {
        return ln_values
            .iter()
            .zip(weights.iter())
            .filter(|(_, &w)| w > 0.0)
            .map(|(&v, _)| v)
            .fold(f64::NEG_INFINITY, f64::max);
    }
    let terms: Vec<f64> = ln_values
        .iter()
        .zip(weights.iter())
        .filter(|(_, &w)| w > 0.0)
        .map(|(&v, &w)| w.ln() + p * v)
        .collect();
    let lse = log_sum_exp(&terms);
    if lse == f64::INFINITY {
        f64::INFINITY
    } else {
        lse / p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lse_matches_direct_sum() {
        let terms = [(0.3f64).ln(), (0.5f64).ln(), (0.2f64).ln()];
        assert!((log_sum_exp(&terms) - 0.0).abs() < 1e-12);
    }

    #[test]
    fn lse_empty_is_neg_inf() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
    }

    #[test]
    fn lse_survives_extreme_shifts() {
        // exp(-1000) underflows; the shifted form must not.
        let v = log_sum_exp(&[-1000.0, -1000.0]);
        assert!((v - (-1000.0 + std::f64::consts::LN_2)).abs() < 1e-12);
    }

    #[test]
    fn power_integral_blows_up_only_above_one() {
        let p = [1.0, 0.0];
        let q = [0.0, 1.0];
        assert_eq!(log_power_integral(&p, &q, 2.0), f64::INFINITY);
        // alpha < 1: integral is 0, so the log is -inf
        assert_eq!(log_power_integral(&p, &q, 0.5), f64::NEG_INFINITY);
    }

    #[test]
    fn linf_norm_ignores_null_weight() {
        let ln_v = [(5.0f64).ln(), (2.0f64).ln()];
        let w = [0.0, 1.0];
        assert!((log_lp_norm(&ln_v, &w, f64::INFINITY) - (2.0f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn l1_norm_is_weighted_mean() {
        let ln_v = [(2.0f64).ln(), (4.0f64).ln()];
        let w = [0.5, 0.5];
        assert!((log_lp_norm(&ln_v, &w, 1.0) - (3.0f64).ln()).abs() < 1e-12);
    }
}
