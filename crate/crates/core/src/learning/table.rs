//! Side-by-side comparison of generalization-bound families at shared
//! `(n, eta, delta)` parameters.

use super::{cor5_bound, sample_complexity_bound};
use crate::error::{Error, Result};
use crate::measures::{Nats, Order};

/// Inputs for the comparison table. A row is produced only when its
/// parameters are present.
#[derive(Debug, Clone, PartialEq)]
pub struct TableParams {
    pub n: usize,
    pub eta: f64,
    pub delta: f64,
    /// Shannon mutual information in nats, for the MI row.
    pub mi: Option<f64>,
    /// Maximal leakage in nats.
    pub leakage: Option<f64>,
    /// Sibson MI (nats) together with its order.
    pub sibson: Option<(f64, Order)>,
    /// Hypothesis-count proxy for the VC-style row.
    pub vc_k: Option<u64>,
    /// Privacy parameter for the differential-privacy row.
    pub dp_epsilon: Option<f64>,
}

/// One comparison row. `robust`/`adaptive` are static metadata; the VC row
/// carries no claims there.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub name: &'static str,
    pub robust: &'static str,
    pub adaptive: &'static str,
    pub bound: f64,
    pub sample_complexity: f64,
    pub note: Option<String>,
}

/// Evaluates every row whose parameters were supplied, in a fixed order:
/// eps-DP, MI, Maximal Leakage, alpha-Sibson, VC.
pub fn baseline_table(params: &TableParams) -> Result<Vec<TableRow>> {
    if params.n == 0 {
        return Err(Error::invalid_param("n must be >= 1"));
    }
    if !(params.eta > 0.0 && params.eta < 1.0) {
        return Err(Error::invalid_param(format!("eta = {} not in (0,1)", params.eta)));
    }
    if !(params.delta > 0.0 && params.delta < 1.0) {
        return Err(Error::invalid_param(format!(
            "delta = {} not in (0,1)",
            params.delta
        )));
    }
    let n = params.n as f64;
    let eta = params.eta;
    let delta = params.delta;
    let neta2 = n * eta * eta;
    let mut rows = Vec::new();

    if let Some(eps) = params.dp_epsilon {
        let valid = eps <= eta / 2.0;
        rows.push(TableRow {
            name: "eps-DP",
            robust: "Yes",
            adaptive: "Yes",
            bound: 0.25 * (-neta2 / 12.0).exp(),
            sample_complexity: 12.0 * (1.0 / (4.0 * delta)).ln() / (eta * eta),
            note: Some(if valid {
                format!("requires epsilon <= eta/2: satisfied (epsilon={eps})")
            } else {
                format!("requires epsilon <= eta/2: violated (epsilon={eps})")
            }),
        });
    }

    if let Some(mi) = params.mi {
        let denom = 2.0 * neta2 - 1.0;
        rows.push(TableRow {
            name: "MI",
            robust: "Yes",
            adaptive: "Yes",
            bound: if denom > 0.0 {
                (mi + 1.0) / denom
            } else {
                f64::INFINITY
            },
            sample_complexity: mi / (eta * eta * delta),
            note: if denom > 0.0 {
                None
            } else {
                Some("bound undefined: 2 n eta^2 <= 1".to_string())
            },
        });
    }

    if let Some(leakage) = params.leakage {
        rows.push(TableRow {
            name: "Maximal Leakage",
            robust: "Yes",
            adaptive: "Yes",
            bound: 2.0 * (leakage - 2.0 * neta2).exp(),
            sample_complexity: (leakage + (2.0 / delta).ln()) / (2.0 * eta * eta),
            note: None,
        });
    }

    if let Some((i_alpha, alpha)) = params.sibson {
        let bound = cor5_bound(Nats::new(i_alpha), alpha, params.n, eta)?;
        let (m, note) = if alpha.is_one() {
            (
                f64::INFINITY,
                Some("gamma = inf at alpha = 1: infinite sample requirement".to_string()),
            )
        } else {
            (
                sample_complexity_bound(Nats::new(i_alpha), alpha, eta, delta)? as f64,
                None,
            )
        };
        rows.push(TableRow {
            name: "alpha-Sibson",
            robust: "Yes",
            adaptive: "Unknown",
            bound,
            sample_complexity: m,
            note,
        });
    }

    if let Some(k) = params.vc_k {
        if k == 0 {
            return Err(Error::invalid_param("vc_k must be >= 1"));
        }
        let ln_k = (k as f64).ln();
        rows.push(TableRow {
            name: "VC-K",
            robust: "",
            adaptive: "",
            bound: 2.0 * (ln_k - 2.0 * neta2).exp(),
            sample_complexity: (ln_k + (2.0 / delta).ln()) / (2.0 * eta * eta),
            note: None,
        });
    }

    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> TableParams {
        TableParams {
            n: 100,
            eta: 0.2,
            delta: 0.05,
            mi: None,
            leakage: None,
            sibson: None,
            vc_k: None,
            dp_epsilon: None,
        }
    }

    #[test]
    fn only_supplied_rows_appear() {
        let mut p = base();
        p.vc_k = Some(2);
        let rows = baseline_table(&p).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].name, "VC-K");
    }

    #[test]
    fn vc_two_matches_leakage_ln2() {
        let mut p = base();
        p.vc_k = Some(2);
        p.leakage = Some(std::f64::consts::LN_2);
        let rows = baseline_table(&p).unwrap();
        let ml = rows.iter().find(|r| r.name == "Maximal Leakage").unwrap();
        let vc = rows.iter().find(|r| r.name == "VC-K").unwrap();
        assert!((ml.bound - vc.bound).abs() < 1e-12 * ml.bound);
        assert!((ml.sample_complexity - vc.sample_complexity).abs() < 1e-9);
    }

    #[test]
    fn mi_row_guards_small_samples() {
        let mut p = base();
        p.n = 10;
        p.eta = 0.2;
        // 2 n eta^2 = 0.8 <= 1
        p.mi = Some(0.3);
        let rows = baseline_table(&p).unwrap();
        assert_eq!(rows[0].bound, f64::INFINITY);
        assert!(rows[0].note.is_some());
    }

    #[test]
    fn leakage_hand_value() {
        let mut p = base();
        p.leakage = Some(std::f64::consts::LN_2);
        let rows = baseline_table(&p).unwrap();
        // 2 exp(ln2 - 8) = 4 e^-8
        let expect = 4.0 * (-8.0f64).exp();
        assert!((rows[0].bound - expect).abs() < 1e-12 * expect);
    }

    #[test]
    fn dp_validity_flag() {
        let mut p = base();
        p.dp_epsilon = Some(0.05);
        let rows = baseline_table(&p).unwrap();
        assert!(rows[0].note.as_ref().unwrap().contains("satisfied"));
        p.dp_epsilon = Some(0.5);
        let rows = baseline_table(&p).unwrap();
        assert!(rows[0].note.as_ref().unwrap().contains("violated"));
    }

    #[test]
    fn parameter_validation() {
        let mut p = base();
        p.eta = 1.5;
        assert!(baseline_table(&p).is_err());
        let mut p = base();
        p.n = 0;
        assert!(baseline_table(&p).is_err());
    }
}
