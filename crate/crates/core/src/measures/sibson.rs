//! Sibson α-mutual information, its minimization oracle, maximal leakage,
//! and Shannon mutual information.
//!
//! `I_alpha(X;Y) = min_{Q_Y} D_alpha(P_XY || P_X Q_Y)`. For finite
//! `alpha != 1` the minimum has the closed form
//!
//! ```text
//! I_alpha = alpha/(alpha-1) * ln sum_y ( sum_x P_X(x) P_{Y|X}(y|x)^alpha )^(1/alpha)
//! ```
//!
//! which this module computes in log domain. The oracle evaluates the
//! minimization directly on a simplex grid, so the two routes check each
//! other.

use super::distribution::{FiniteDistribution, JointDistribution, Nats};
use super::logdomain::log_sum_exp;
use super::order::Order;
use crate::error::{Error, Result};

/// Largest output alphabet the minimization oracle accepts.
pub const ORACLE_MAX_NY: usize = 5;
/// Smallest grid resolution the minimization oracle accepts.
pub const ORACLE_MIN_RESOLUTION: usize = 50;

/// `ln w_y` where `w_y = (sum_x P_X(x) P_{Y|X}(y|x)^alpha)^(1/alpha)`,
/// written with joint cells so rows with `P_X(x) = 0` drop out:
/// `sum_x P_X(x)^(1-alpha) P_XY(x,y)^alpha`.
fn log_column_weights(j: &JointDistribution, a: f64) -> Vec<f64> {
    let px = j.marginal_x();
    let mut ln_w = Vec::with_capacity(j.ny());
    let mut terms = Vec::with_capacity(j.nx());
    for y in 0..j.ny() {
        terms.clear();
        for x in 0..j.nx() {
            let m = j.prob(x, y);
            if m > 0.0 {
                terms.push((1.0 - a) * px.prob(x).ln() + a * m.ln());
            }
        }
        ln_w.push(log_sum_exp(&terms) / a);
    }
    ln_w
}

/// Sibson mutual information of order `alpha`, in nats.
///
/// Order 1 is Shannon mutual information, order `inf` is maximal leakage;
/// both are the continuity limits of the closed form.
pub fn sibson_mi(j: &JointDistribution, alpha: Order) -> Nats {
    match alpha {
        Order::One => mutual_information(j),
        Order::Infinity => maximal_leakage(j),
        Order::Finite(a) => {
            let ln_w = log_column_weights(j, a);
            let outer = log_sum_exp(&ln_w);
            Nats::new(a / (a - 1.0) * outer)
        }
    }
}

/// Shannon mutual information `I(X;Y)` in nats, with `0 ln 0 := 0`.
pub fn mutual_information(j: &JointDistribution) -> Nats {
    let px = j.marginal_x();
    let py = j.marginal_y();
    let mut mi = 0.0;
    for x in 0..j.nx() {
        for y in 0..j.ny() {
            let m = j.prob(x, y);
            if m > 0.0 {
                mi += m * (m.ln() - px.prob(x).ln() - py.prob(y).ln());
            }
        }
    }
    Nats::new(mi)
}

/// Maximal leakage `L(X -> Y) = ln sum_{y: P_Y(y)>0} max_{x: P_X(x)>0} P_{Y|X}(y|x)`.
pub fn maximal_leakage(j: &JointDistribution) -> Nats {
    let px = j.marginal_x();
    let py = j.marginal_y();
    let mut sum = 0.0;
    for y in 0..j.ny() {
        if py.prob(y) <= 0.0 {
            continue;
        }
        let mut best = 0.0f64;
        for x in 0..j.nx() {
            let p = px.prob(x);
            if p > 0.0 {
                best = best.max(j.prob(x, y) / p);
            }
        }
        sum += best;
    }
    Nats::new(sum.ln())
}

/// The analytic minimizer `Q*(y) ∝ (sum_x P_X(x) P_{Y|X}(y|x)^alpha)^(1/alpha)`
/// of the Sibson minimization, for finite `alpha != 1`.
pub fn optimal_output_distribution(
    j: &JointDistribution,
    alpha: Order,
) -> Result<FiniteDistribution> {
    let a = alpha.as_finite().ok_or(Error::DegenerateOrder)?;
    let ln_w = log_column_weights(j, a);
    let max = ln_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = ln_w
        .iter()
        .map(|&v| if v == f64::NEG_INFINITY { 0.0 } else { (v - max).exp() })
        .collect();
    FiniteDistribution::from_weights(weights)
}

/// Column coefficients `c_y = sum_x P_XY(x,y)^alpha P_X(x)^(1-alpha)`, so
/// that `D_alpha(P_XY || P_X Q) = (1/(alpha-1)) ln sum_y c_y Q(y)^(1-alpha)`.
fn column_coefficients(j: &JointDistribution, a: f64) -> Vec<f64> {
    let px = j.marginal_x();
    let mut c = Vec::with_capacity(j.ny());
    let mut terms = Vec::with_capacity(j.nx());
    for y in 0..j.ny() {
        terms.clear();
        for x in 0..j.nx() {
            let m = j.prob(x, y);
            if m > 0.0 {
                terms.push(a * m.ln() + (1.0 - a) * px.prob(x).ln());
            }
        }
        let lse = log_sum_exp(&terms);
        c.push(if lse == f64::NEG_INFINITY { 0.0 } else { lse.exp() });
    }
    c
}

/// Per-coordinate cost of allocating `k` of `units` grid steps to column `y`,
/// in the minimization direction. For `alpha > 1` the objective
/// `sum_y c_y q_y^(1-alpha)` is minimized; for `alpha < 1` it is maximized,
/// so the cost is its negation. Both are convex and nonincreasing in `k`,
/// which is what makes the greedy allocation below exact.
#[inline]
fn allocation_cost(c: f64, a: f64, k: usize, units: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    if a > 1.0 {
        if k == 0 {
            f64::INFINITY
        } else {
            c * (k as f64 / units).powf(1.0 - a)
        }
    } else {
        -c * (k as f64 / units).powf(1.0 - a)
    }
}

#[derive(PartialEq)]
struct HeapMove {
    gain: f64,
    y: usize,
}

impl Eq for HeapMove {}

impl Ord for HeapMove {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on gain; ties go to the smaller column index
        self.gain
            .total_cmp(&other.gain)
            .then_with(|| other.y.cmp(&self.y))
    }
}

impl PartialOrd for HeapMove {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact minimizer of `sum_y cost(c_y, k_y)` over integer allocations with
/// `sum_y k_y = total` and `lower <= k <= upper`.
///
/// Greedy incremental allocation is exact here because each per-coordinate
/// cost is convex in `k`: the marginal gains are nonincreasing, so taking
/// the largest available gain at every step cannot be improved on.
fn allocate_greedy(
    c: &[f64],
    a: f64,
    units: f64,
    total: usize,
    lower: &[usize],
    upper: &[usize],
) -> Vec<usize> {
    let mut k = lower.to_vec();
    let allocated: usize = k.iter().sum();
    debug_assert!(allocated <= total);
    let mut remaining = total - allocated;

    let mut heap = std::collections::BinaryHeap::with_capacity(c.len());
    for y in 0..c.len() {
        if k[y] < upper[y] {
            heap.push(HeapMove {
                gain: allocation_cost(c[y], a, k[y], units) - allocation_cost(c[y], a, k[y] + 1, units),
                y,
            });
        }
    }
    while remaining > 0 {
        let mv = heap.pop().expect("feasible allocation exhausted early");
        let y = mv.y;
        k[y] += 1;
        remaining -= 1;
        if k[y] < upper[y] {
            heap.push(HeapMove {
                gain: allocation_cost(c[y], a, k[y], units) - allocation_cost(c[y], a, k[y] + 1, units),
                y,
            });
        }
    }
    k
}

fn oracle_argmin(j: &JointDistribution, a: f64, resolution: usize) -> FiniteDistribution {
    let ny = j.ny();
    let c = column_coefficients(j, a);

    // stage 1: exact minimum over the step-1/resolution simplex grid
    let coarse = allocate_greedy(
        &c,
        a,
        resolution as f64,
        resolution,
        &vec![0; ny],
        &vec![resolution; ny],
        );

    // stage 2: exact minimum over the step-1/resolution^2 lattice restricted
    // to one coarse cell around the stage-1 point
    let fine_total = resolution * resolution;
    let lower: Vec<usize> = coarse
        .iter()
        .map(|&ky| (ky * resolution).saturating_sub(resolution))
        .collect();
    let upper: Vec<usize> = coarse
        .iter()
        .map(|&ky| (ky * resolution + resolution).min(fine_total))
        .collect();
    let fine = allocate_greedy(&c, a, fine_total as f64, fine_total, &lower, &upper);

    let mass: Vec<f64> = fine.iter().map(|&ky| ky as f64 / fine_total as f64).collect();
    FiniteDistribution::new(mass).expect("grid point is a valid distribution")
}

/// Direct evaluation of `min_{Q_Y} D_alpha(P_XY || P_X Q_Y)` on a simplex
/// grid of step `1/resolution`, followed by local refinement to step
/// `1/resolution^2` around the best grid point.
///
/// The returned value is `D_alpha` at the found grid point, evaluated
/// through [`renyi_divergence`](super::divergence::renyi_divergence) on the
/// flattened product alphabet, so it exercises the definitional route
/// rather than the closed form. Deterministic and seedless.
pub fn sibson_mi_minimization_oracle(
    j: &JointDistribution,
    alpha: Order,
    resolution: usize,
) -> Result<Nats> {
    let (value, _) = sibson_oracle_with_argmin(j, alpha, resolution)?;
    Ok(value)
}

/// Oracle variant that also reports the best grid point found.
pub fn sibson_oracle_with_argmin(
    j: &JointDistribution,
    alpha: Order,
    resolution: usize,
) -> Result<(Nats, FiniteDistribution)> {
    let a = alpha.as_finite().ok_or(Error::DegenerateOrder)?;
    if j.ny() > ORACLE_MAX_NY {
        return Err(Error::AlphabetTooLarge {
            ny: j.ny(),
            max: ORACLE_MAX_NY,
        });
    }
    if resolution < ORACLE_MIN_RESOLUTION {
        return Err(Error::ResolutionTooSmall {
            got: resolution,
            min: ORACLE_MIN_RESOLUTION,
        });
    }
    let q = oracle_argmin(j, a, resolution);
    let product = JointDistribution::product(&j.marginal_x(), &q);
    let value = super::divergence::renyi_divergence(&j.flatten(), &product.flatten(), alpha)?;
    Ok((value, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::divergence::renyi_divergence;
    use proptest::prelude::*;

    fn joint(rows: &[Vec<f64>]) -> JointDistribution {
        JointDistribution::from_rows(rows).unwrap()
    }

    fn order(a: f64) -> Order {
        Order::new(a).unwrap()
    }

    fn mi_at(j: &JointDistribution, a: f64) -> f64 {
        sibson_mi(j, order(a)).value()
    }

    #[test]
    fn product_joint_has_zero_information() {
        let px = FiniteDistribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let py = FiniteDistribution::new(vec![0.6, 0.4]).unwrap();
        let j = JointDistribution::product(&px, &py);
        for &a in &[0.5, 2.0, 17.0] {
            assert!(mi_at(&j, a).abs() < 1e-12, "alpha={a}");
        }
        assert!(mutual_information(&j).value().abs() < 1e-12);
        assert!(maximal_leakage(&j).value().abs() < 1e-12);
    }

    #[test]
    fn identity_channel_gives_log_alphabet() {
        let k = 4;
        let mut rows = Vec::new();
        for x in 0..k {
            let mut r = vec![0.0; k];
            r[x] = 0.25;
            rows.push(r);
        }
        let j = joint(&rows);
        let ln4 = (4.0f64).ln();
        for &a in &[0.5, 2.0, 17.0] {
            assert!((mi_at(&j, a) - ln4).abs() < 1e-12, "alpha={a}");
        }
        assert!((mutual_information(&j).value() - ln4).abs() < 1e-12);
        assert!((maximal_leakage(&j).value() - ln4).abs() < 1e-12);
    }

    #[test]
    fn symmetric_example_hand_value() {
        let j = joint(&[vec![0.4, 0.1], vec![0.1, 0.4]]);
        // closed form: (2/1) ln sum_y sqrt(0.5*0.64 + 0.5*0.04) = ln 1.36
        assert!((mi_at(&j, 2.0) - (1.36f64).ln()).abs() < 1e-12);
        assert!((mi_at(&j, 2.0) - 0.307485).abs() < 1e-6);
        // Shannon MI: 0.8 ln 1.6 + 0.2 ln 0.4
        let expect = 0.8 * (1.6f64).ln() + 0.2 * (0.4f64).ln();
        assert!((mutual_information(&j).value() - expect).abs() < 1e-12);
        assert!((mutual_information(&j).value() - 0.192745).abs() < 1e-6);
    }

    #[test]
    fn bsc_leakage_hand_value() {
        let j = joint(&[vec![0.45, 0.05], vec![0.05, 0.45]]);
        assert!((maximal_leakage(&j).value() - (1.8f64).ln()).abs() < 1e-12);
        assert!((maximal_leakage(&j).value() - 0.587787).abs() < 1e-6);
    }

    #[test]
    fn optimal_output_matches_marginal_on_product() {
        let px = FiniteDistribution::new(vec![0.2, 0.8]).unwrap();
        let py = FiniteDistribution::new(vec![0.3, 0.1, 0.6]).unwrap();
        let j = JointDistribution::product(&px, &py);
        let q = optimal_output_distribution(&j, order(2.0)).unwrap();
        for y in 0..3 {
            assert!((q.prob(y) - py.prob(y)).abs() < 1e-12);
        }
    }

    #[test]
    fn optimal_output_uniform_on_symmetric_joint() {
        let j = joint(&[vec![0.4, 0.1], vec![0.1, 0.4]]);
        let q = optimal_output_distribution(&j, order(2.0)).unwrap();
        assert!((q.prob(0) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn optimal_output_achieves_the_minimum() {
        let j = joint(&[vec![0.6, 0.2], vec![0.1, 0.1]]);
        for &a in &[0.5, 2.0, 5.0] {
            let q = optimal_output_distribution(&j, order(a)).unwrap();
            let product = JointDistribution::product(&j.marginal_x(), &q);
            let d = renyi_divergence(&j.flatten(), &product.flatten(), order(a))
                .unwrap()
                .value();
            assert!((d - mi_at(&j, a)).abs() < 1e-10, "alpha={a}");
        }
    }

    #[test]
    fn oracle_rejects_bad_inputs() {
        let j = joint(&[vec![0.5, 0.5]]);
        assert!(matches!(
            sibson_mi_minimization_oracle(&j, Order::One, 1000),
            Err(Error::DegenerateOrder)
        ));
        assert!(matches!(
            sibson_mi_minimization_oracle(&j, order(2.0), 10),
            Err(Error::ResolutionTooSmall { .. })
        ));
        let wide = JointDistribution::new(1, 6, vec![1.0 / 6.0; 6]).unwrap();
        assert!(matches!(
            sibson_mi_minimization_oracle(&wide, order(2.0), 1000),
            Err(Error::AlphabetTooLarge { .. })
        ));
    }

    #[test]
    fn oracle_on_grid_product_joint_is_zero() {
        let px = FiniteDistribution::new(vec![0.2, 0.8]).unwrap();
        let py = FiniteDistribution::new(vec![0.3, 0.7]).unwrap();
        let j = JointDistribution::product(&px, &py);
        let v = sibson_mi_minimization_oracle(&j, order(2.0), 1000).unwrap();
        assert!(v.value().abs() < 1e-10, "got {}", v.value());
    }

    #[test]
    fn oracle_matches_hand_examples() {
        let j = joint(&[vec![0.4, 0.1], vec![0.1, 0.4]]);
        let v = sibson_mi_minimization_oracle(&j, order(2.0), 1000).unwrap();
        assert!((v.value() - 0.307485).abs() < 1e-5, "got {}", v.value());

        let id2 = joint(&[vec![0.5, 0.0], vec![0.0, 0.5]]);
        let v = sibson_mi_minimization_oracle(&id2, order(3.0), 1000).unwrap();
        assert!((v.value() - (2.0f64).ln()).abs() < 1e-5);
    }

    /// Brute-force minimum of D_alpha(P_XY || P_X Q) over the full simplex
    /// grid, via composition enumeration. Only usable for small grids; the
    /// greedy allocation must reproduce its value exactly.
    fn brute_force_grid_min(j: &JointDistribution, a: f64, resolution: usize) -> f64 {
        let ny = j.ny();
        let c = column_coefficients(j, a);
        let units = resolution as f64;
        let mut best = f64::INFINITY;
        let mut k = vec![0usize; ny];
        fn recurse(
            c: &[f64],
            a: f64,
            units: f64,
            k: &mut Vec<usize>,
            depth: usize,
            left: usize,
            best: &mut f64,
        ) {
            if depth + 1 == k.len() {
                k[depth] = left;
                let total: f64 = k
                    .iter()
                    .enumerate()
                    .map(|(y, &ky)| allocation_cost(c[y], a, ky, units))
                    .sum();
                if total < *best {
                    *best = total;
                }
                return;
            }
            for give in 0..=left {
                k[depth] = give;
                recurse(c, a, units, k, depth + 1, left - give, best);
            }
        }
        recurse(&c, a, units, &mut k, 0, resolution, &mut best);
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

        // The greedy allocation finds the exact grid minimum.
        #[test]
        fn greedy_equals_brute_force(
            w in prop::collection::vec(1e-3f64..1.0, 6..=9),
            ai in 0usize..3,
            resolution in 50usize..80,
        ) {
            let a = [0.5, 1.5, 3.0][ai];
            let ny = 3;
            let nx = w.len() / ny;
            let j = JointDistribution::from_weights(nx, ny, w[..nx * ny].to_vec()).unwrap();
            let c = column_coefficients(&j, a);
            let k = allocate_greedy(
                &c,
                a,
                resolution as f64,
                resolution,
                &vec![0; ny],
                &vec![resolution; ny],
            );
            let greedy_value: f64 = k
                .iter()
                .enumerate()
                .map(|(y, &ky)| allocation_cost(c[y], a, ky, resolution as f64))
                .sum();
            let brute = brute_force_grid_min(&j, a, resolution);
            prop_assert!(
                (greedy_value - brute).abs() <= 1e-12 * brute.abs().max(1.0),
                "greedy {greedy_value} vs brute {brute}"
            );
        }

        // Doubling the resolution refines the grid (nested), so the oracle
        // value cannot increase.
        #[test]
        fn oracle_nonincreasing_in_resolution(
            w in prop::collection::vec(1e-3f64..1.0, 9),
            ai in 0usize..2,
        ) {
            let a = [0.5, 2.0][ai];
            let j = JointDistribution::from_weights(3, 3, w).unwrap();
            let v1 = sibson_mi_minimization_oracle(&j, order(a), 100).unwrap().value();
            let v2 = sibson_mi_minimization_oracle(&j, order(a), 200).unwrap().value();
            let v3 = sibson_mi_minimization_oracle(&j, order(a), 400).unwrap().value();
            prop_assert!(v2 <= v1 + 1e-9);
            prop_assert!(v3 <= v2 + 1e-9);
        }

        // Any feasible Q dominates the minimum; Q = P_Y is feasible.
        #[test]
        fn min_dominated_by_marginal(
            w in prop::collection::vec(1e-4f64..1.0, 16),
            ai in 0usize..4,
        ) {
            let a = [0.5, 1.5, 2.0, 5.0][ai];
            let j = JointDistribution::from_weights(4, 4, w).unwrap();
            let product = JointDistribution::product(&j.marginal_x(), &j.marginal_y());
            let d = renyi_divergence(&j.flatten(), &product.flatten(), order(a))
                .unwrap()
                .value();
            prop_assert!(mi_at(&j, a) <= d + 1e-10);
        }

        // alpha -> 1 and alpha -> inf limits of the closed form.
        #[test]
        fn limit_recovery(w in prop::collection::vec(1e-3f64..1.0, 12)) {
            let j = JointDistribution::from_weights(4, 3, w).unwrap();
            let near_one = mi_at(&j, 1.0 + 1e-4);
            prop_assert!((near_one - mutual_information(&j).value()).abs() <= 1e-3);
            let near_inf = mi_at(&j, 1e4);
            prop_assert!((near_inf - maximal_leakage(&j).value()).abs() <= 1e-3);
        }

        // Post-processing Y cannot increase I_alpha or leakage.
        #[test]
        fn data_processing(
            w in prop::collection::vec(1e-4f64..1.0, 9),
            kw in prop::collection::vec(1e-4f64..1.0, 9),
        ) {
            let j = JointDistribution::from_weights(3, 3, w).unwrap();
            let kernel: Vec<Vec<f64>> = kw
                .chunks(3)
                .map(|r| {
                    let s: f64 = r.iter().sum();
                    r.iter().map(|v| v / s).collect()
                })
                .collect();
            let garbled = j.garble_y(&kernel).unwrap();
            for &a in &[0.5, 1.0, 1.5, 2.0, 4.0, 10.0, f64::INFINITY] {
                let before = sibson_mi(&j, Order::new(a).unwrap()).value();
                let after = sibson_mi(&garbled, Order::new(a).unwrap()).value();
                prop_assert!(after <= before + 1e-10, "alpha={a}: {after} > {before}");
            }
        }
    }
}
