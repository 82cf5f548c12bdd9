//! Exact enumeration of dataset spaces and learner-induced joints.

use super::problem::{Learner, LearningProblem, TieBreak};
use crate::bounds::Event;
use crate::error::{Error, Result};
use crate::measures::{FiniteDistribution, JointDistribution};

/// The ordered space of all `z_size^n` datasets, lexicographic (the first
/// sample is the most significant digit).
#[derive(Debug, Clone)]
pub struct DatasetSpace {
    z_size: usize,
    n: usize,
    count: usize,
}

/// Enumerates all datasets of the problem; errors when `z_size^n` exceeds
/// the problem's cap.
pub fn dataset_space(problem: &LearningProblem) -> Result<DatasetSpace> {
    let z = problem.z_size() as u128;
    let mut count: u128 = 1;
    for _ in 0..problem.n() {
        count = count.saturating_mul(z);
        if count > problem.cap() as u128 {
            return Err(Error::CapExceeded {
                required: count,
                cap: problem.cap(),
            });
        }
    }
    Ok(DatasetSpace {
        z_size: problem.z_size(),
        n: problem.n(),
        count: count as usize,
    })
}

impl DatasetSpace {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The dataset at a lexicographic index.
    pub fn dataset(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.count);
        let mut digits = vec![0usize; self.n];
        let mut rest = index;
        for slot in digits.iter_mut().rev() {
            *slot = rest % self.z_size;
            rest /= self.z_size;
        }
        digits
    }

    /// The lexicographic index of a dataset.
    pub fn index_of(&self, dataset: &[usize]) -> usize {
        debug_assert_eq!(dataset.len(), self.n);
        dataset.iter().fold(0, |acc, &z| acc * self.z_size + z)
    }

    /// Product probability of the dataset at `index` under the data
    /// distribution.
    pub fn probability(&self, problem: &LearningProblem, index: usize) -> f64 {
        self.dataset(index)
            .iter()
            .map(|&z| problem.data_dist().prob(z))
            .product()
    }

    /// Iterates `(index, dataset)` in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Vec<usize>)> + '_ {
        (0..self.count).map(move |i| (i, self.dataset(i)))
    }
}

/// The learner-induced joint over (dataset, hypothesis):
/// `mass(s, h) = P^n(s) * P_{H|S}(h|s)`, rows in lexicographic dataset order.
pub fn build_joint(problem: &LearningProblem, learner: &Learner) -> Result<JointDistribution> {
    let space = dataset_space(problem)?;
    if learner.num_datasets() != space.count() {
        return Err(Error::LengthMismatch(learner.num_datasets(), space.count()));
    }
    if learner.h_size() != problem.h_size() {
        return Err(Error::LengthMismatch(learner.h_size(), problem.h_size()));
    }
    let h_size = problem.h_size();
    let mut weights = Vec::with_capacity(space.count() * h_size);
    let mut total = 0.0;
    for s in 0..space.count() {
        let ps = space.probability(problem, s);
        for h in 0..h_size {
            let m = ps * learner.row_prob(s, h);
            total += m;
            weights.push(m);
        }
    }
    // accumulated drift over up to cap many cells; anything worse than
    // 1e-10 indicates a real defect, not rounding
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized {
            sum: total,
            tol: 1e-10,
        });
    }
    JointDistribution::from_weights(space.count(), h_size, weights)
}

/// The event `{(s,h) : |L_P(h) - L_S(h)| > eta}` over datasets x hypotheses.
pub fn generalization_event(problem: &LearningProblem, eta: f64) -> Result<Event> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid_param(format!("eta = {eta} not in (0,1)")));
    }
    let space = dataset_space(problem)?;
    let h_size = problem.h_size();
    let true_risks: Vec<f64> = (0..h_size)
        .map(|h| problem.true_risk(h))
        .collect::<Result<_>>()?;
    let mut indicator = Vec::with_capacity(space.count() * h_size);
    for (_, dataset) in space.iter() {
        for (h, &risk) in true_risks.iter().enumerate() {
            let emp = problem.empirical_risk(h, &dataset)?;
            indicator.push((risk - emp).abs() > eta);
        }
    }
    Event::new(space.count(), h_size, indicator)
}

/// Empirical risks of every hypothesis on one dataset.
fn risk_profile(problem: &LearningProblem, dataset: &[usize]) -> Result<Vec<f64>> {
    (0..problem.h_size())
        .map(|h| problem.empirical_risk(h, dataset))
        .collect()
}

/// Empirical risk minimization over the full dataset space.
pub fn erm_learner(problem: &LearningProblem, tie_break: TieBreak) -> Result<Learner> {
    let space = dataset_space(problem)?;
    let h_size = problem.h_size();
    match tie_break {
        TieBreak::LowestIndex => {
            let mut map = Vec::with_capacity(space.count());
            for (_, dataset) in space.iter() {
                let risks = risk_profile(problem, &dataset)?;
                let best = risks
                    .iter()
                    .enumerate()
                    .min_by(|(_, a), (_, b)| a.total_cmp(b))
                    .map(|(h, _)| h)
                    .expect("nonempty hypothesis set");
                map.push(best);
            }
            Learner::deterministic(map, h_size)
        }
        TieBreak::UniformRandom => {
            let mut rows = Vec::with_capacity(space.count());
            for (_, dataset) in space.iter() {
                let risks = risk_profile(problem, &dataset)?;
                let min = risks.iter().copied().fold(f64::INFINITY, f64::min);
                let weights: Vec<f64> = risks
                    .iter()
                    .map(|&r| if r == min { 1.0 } else { 0.0 })
                    .collect();
                rows.push(FiniteDistribution::from_weights(weights)?);
            }
            Learner::stochastic(rows)
        }
    }
}

/// Gibbs learner: `P(h|s) ∝ exp(-L_S(h)/temperature)`.
///
/// Temperature to infinity flattens the rows (information to 0);
/// temperature to 0 approaches ERM with lowest-index ties.
pub fn gibbs_learner(problem: &LearningProblem, temperature: f64) -> Result<Learner> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::invalid_param(format!(
            "temperature must be positive and finite, got {temperature}"
        )));
    }
    let space = dataset_space(problem)?;
    let mut rows = Vec::with_capacity(space.count());
    for (_, dataset) in space.iter() {
        let risks = risk_profile(problem, &dataset)?;
        let max_score = risks
            .iter()
            .map(|&r| -r / temperature)
            .fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = risks
            .iter()
            .map(|&r| (-r / temperature - max_score).exp())
            .collect();
        rows.push(FiniteDistribution::from_weights(weights)?);
    }
    Learner::stochastic(rows)
}

/// The space of dataset types (count vectors over Z summing to n), in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct TypeSpace {
    types: Vec<Vec<usize>>,
    n: usize,
}

pub fn type_space(problem: &LearningProblem) -> TypeSpace {
    let mut types = Vec::new();
    let mut current = vec![0usize; problem.z_size()];
    fill_types(&mut types, &mut current, 0, problem.n());
    TypeSpace {
        types,
        n: problem.n(),
    }
}

fn fill_types(out: &mut Vec<Vec<usize>>, current: &mut Vec<usize>, depth: usize, left: usize) {
    if depth + 1 == current.len() {
        current[depth] = left;
        out.push(current.clone());
        return;
    }
    for take in 0..=left {
        current[depth] = take;
        fill_types(out, current, depth + 1, left - take);
    }
}

impl TypeSpace {
    pub fn count(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self) -> &[Vec<usize>] {
        &self.types
    }

    pub fn type_of(&self, dataset: &[usize]) -> Vec<usize> {
        let z_size = self.types[0].len();
        let mut counts = vec![0usize; z_size];
        for &z in dataset {
            counts[z] += 1;
        }
        counts
    }

    pub fn index_of(&self, ty: &[usize]) -> Option<usize> {
        self.types.iter().position(|t| t == ty)
    }

    /// Canonical representative: samples in nondecreasing order.
    pub fn canonical_dataset(&self, ty: &[usize]) -> Vec<usize> {
        let mut ds = Vec::with_capacity(self.n);
        for (z, &k) in ty.iter().enumerate() {
            ds.extend(std::iter::repeat(z).take(k));
        }
        ds
    }

    /// Multinomial coefficient `n! / prod_z k_z!` as f64, built from
    /// binomials so small cases are exact.
    pub fn multiplicity(&self, ty: &[usize]) -> f64 {
        let mut remaining = self.n;
        let mut coeff = 1.0;
        for &k in ty {
            coeff *= binomial(remaining, k);
            remaining -= k;
        }
        coeff
    }

    /// Probability of the whole type class under the data distribution.
    pub fn probability(&self, problem: &LearningProblem, ty: &[usize]) -> f64 {
        let point: f64 = ty
            .iter()
            .enumerate()
            .map(|(z, &k)| problem.data_dist().prob(z).powi(k as i32))
            .product();
        self.multiplicity(ty) * point
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for j in 1..=k {
        c = c * (n - k + j) as f64 / j as f64;
    }
    c
}

/// Checks that a learner's rows depend on the dataset only through its
/// type, by comparing a strided sample of datasets against their canonical
/// (sorted) permutations. Entry tolerance 1e-12.
pub fn certify_exchangeable(
    problem: &LearningProblem,
    learner: &Learner,
    max_checks: usize,
) -> Result<()> {
    let space = dataset_space(problem)?;
    let types = type_space(problem);
    let stride = (space.count() / max_checks.max(1)).max(1);
    let mut s = 0;
    while s < space.count() {
        let dataset = space.dataset(s);
        let canonical = types.canonical_dataset(&types.type_of(&dataset));
        let c = space.index_of(&canonical);
        for h in 0..learner.h_size() {
            if (learner.row_prob(s, h) - learner.row_prob(c, h)).abs() > 1e-12 {
                return Err(Error::NotExchangeable(s, c));
            }
        }
        s += stride;
    }
    Ok(())
}

/// The joint over (type, hypothesis): rows are type classes weighted by
/// multinomial mass, columns as in [`build_joint`]. Requires the learner to
/// pass [`certify_exchangeable`] first.
pub fn build_collapsed_joint(
    problem: &LearningProblem,
    learner: &Learner,
) -> Result<(JointDistribution, TypeSpace)> {
    certify_exchangeable(problem, learner, 4096)?;
    let space = dataset_space(problem)?;
    let types = type_space(problem);
    let h_size = problem.h_size();
    let mut weights = Vec::with_capacity(types.count() * h_size);
    let mut total = 0.0;
    for ty in types.types() {
        let canonical = space.index_of(&types.canonical_dataset(ty));
        let pt = types.probability(problem, ty);
        for h in 0..h_size {
            let m = pt * learner.row_prob(canonical, h);
            total += m;
            weights.push(m);
        }
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized {
            sum: total,
            tol: 1e-10,
        });
    }
    let joint = JointDistribution::from_weights(types.count(), h_size, weights)?;
    Ok((joint, types))
}

/// Aggregates a full (dataset, hypothesis) joint into the (type, hypothesis)
/// shape, for comparison against [`build_collapsed_joint`].
pub fn aggregate_joint_by_type(
    problem: &LearningProblem,
    joint: &JointDistribution,
) -> Result<JointDistribution> {
    let space = dataset_space(problem)?;
    if joint.nx() != space.count() {
        return Err(Error::LengthMismatch(joint.nx(), space.count()));
    }
    let types = type_space(problem);
    let h_size = joint.ny();
    let mut mass = vec![0.0; types.count() * h_size];
    for (s, dataset) in space.iter() {
        let t = types
            .index_of(&types.type_of(&dataset))
            .expect("every dataset has a type");
        for h in 0..h_size {
            mass[t * h_size + h] += joint.prob(s, h);
        }
    }
    JointDistribution::new(types.count(), h_size, mass)
}

/// The generalization event on the collapsed (type, hypothesis) space.
pub fn collapsed_generalization_event(
    problem: &LearningProblem,
    types: &TypeSpace,
    eta: f64,
) -> Result<Event> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::invalid_param(format!("eta = {eta} not in (0,1)")));
    }
    let h_size = problem.h_size();
    let true_risks: Vec<f64> = (0..h_size)
        .map(|h| problem.true_risk(h))
        .collect::<Result<_>>()?;
    let mut indicator = Vec::with_capacity(types.count() * h_size);
    for ty in types.types() {
        let dataset = types.canonical_dataset(ty);
        for (h, &risk) in true_risks.iter().enumerate() {
            let emp = problem.empirical_risk(h, &dataset)?;
            indicator.push((risk - emp).abs() > eta);
        }
    }
    Event::new(types.count(), h_size, indicator)
}
