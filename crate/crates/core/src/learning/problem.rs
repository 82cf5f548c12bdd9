//! Finite learning problems and learners as channels.

use crate::error::{Error, Result};
use crate::measures::FiniteDistribution;

/// Default cap on the number of datasets any enumeration will touch.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// A finite supervised-learning problem: a data distribution over
/// `{0,..,z_size-1}`, a sample count `n`, and a loss table `loss[h][z]`.
///
/// Losses in `[0,1]` get the sub-Gaussian parameter `sigma = 1/2`
/// (Hoeffding's lemma for bounded variables); any other bounded loss must
/// supply its own `sigma`, which is recorded as user-asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningProblem {
    data_dist: FiniteDistribution,
    n: usize,
    loss: Vec<Vec<f64>>,
    sigma: f64,
    sigma_user_asserted: bool,
    cap: usize,
}

fn validate_loss(loss: &[Vec<f64>], z_size: usize) -> Result<()> {
    if loss.is_empty() {
        return Err(Error::invalid_param("empty hypothesis set"));
    }
    for (h, row) in loss.iter().enumerate() {
        if row.len() != z_size {
            return Err(Error::LengthMismatch(row.len(), z_size));
        }
        for (z, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::invalid_param(format!(
                    "loss({h},{z}) is not finite: {v}"
                )));
            }
        }
    }
    Ok(())
}

impl LearningProblem {
    /// A problem with losses in `[0,1]`; `sigma` defaults to `1/2`.
    pub fn new(data_dist: FiniteDistribution, n: usize, loss: Vec<Vec<f64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_param("sample count n must be >= 1"));
        }
        validate_loss(&loss, data_dist.support_size())?;
        for (h, row) in loss.iter().enumerate() {
            for (z, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::invalid_param(format!(
                        "loss({h},{z}) = {v} outside [0,1]; use with_sigma for general losses"
                    )));
                }
            }
        }
        Ok(LearningProblem {
            data_dist,
            n,
            loss,
            sigma: 0.5,
            sigma_user_asserted: false,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    /// A problem with arbitrary bounded losses and a caller-supplied
    /// sub-Gaussian parameter.
    pub fn with_sigma(
        data_dist: FiniteDistribution,
        n: usize,
        loss: Vec<Vec<f64>>,
        sigma: f64,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_param("sample count n must be >= 1"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid_param(format!("sigma must be positive, got {sigma}")));
        }
        validate_loss(&loss, data_dist.support_size())?;
        Ok(LearningProblem {
            data_dist,
            n,
            loss,
            sigma,
            sigma_user_asserted: true,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn data_dist(&self) -> &FiniteDistribution {
        &self.data_dist
    }

    pub fn z_size(&self) -> usize {
        self.data_dist.support_size()
    }

    pub fn h_size(&self) -> usize {
        self.loss.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn sigma_user_asserted(&self) -> bool {
        self.sigma_user_asserted
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    #[inline]
    pub fn loss(&self, h: usize, z: usize) -> f64 {
        self.loss[h][z]
    }

    /// Whether every loss entry lies in `[0,1]` (the regime where the
    /// 1/n-sensitivity and McDiarmid arguments apply as stated).
    pub fn unit_interval_loss(&self) -> bool {
        self.loss
            .iter()
            .all(|row| row.iter().all(|&v| (0.0..=1.0).contains(&v)))
    }

    fn check_h(&self, h: usize) -> Result<()> {
        if h >= self.h_size() {
            return Err(Error::IndexOutOfRange {
                index: h,
                size: self.h_size(),
            });
        }
        Ok(())
    }

    /// Empirical risk `(1/n) sum_i loss(h, z_i)`.
    pub fn empirical_risk(&self, h: usize, dataset: &[usize]) -> Result<f64> {
        self.check_h(h)?;
        if dataset.len() != self.n {
            return Err(Error::LengthMismatch(dataset.len(), self.n));
        }
        let mut total = 0.0;
        for &z in dataset {
            if z >= self.z_size() {
                return Err(Error::IndexOutOfRange {
                    index: z,
                    size: self.z_size(),
                });
            }
            total += self.loss(h, z);
        }
        Ok(total / self.n as f64)
    }

    /// True risk `sum_z P(z) loss(h, z)`.
    pub fn true_risk(&self, h: usize) -> Result<f64> {
        self.check_h(h)?;
        Ok((0..self.z_size())
            .map(|z| self.data_dist.prob(z) * self.loss(h, z))
            .sum())
    }
}

/// ERM tie-breaking rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    LowestIndex,
    UniformRandom,
}

/// A learning algorithm as a channel from dataset indices to hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub enum Learner {
    /// dataset index -> hypothesis index
    Deterministic { map: Vec<usize>, h_size: usize },
    /// dataset index -> distribution over hypotheses
    Stochastic { rows: Vec<FiniteDistribution> },
}

impl Learner {
    pub fn deterministic(map: Vec<usize>, h_size: usize) -> Result<Self> {
        if map.is_empty() || h_size == 0 {
            return Err(Error::EmptySupport);
        }
        for (s, &h) in map.iter().enumerate() {
            if h >= h_size {
                return Err(Error::invalid_param(format!(
                    "learner maps dataset {s} to hypothesis {h} >= h_size {h_size}"
                )));
            }
        }
        Ok(Learner::Deterministic { map, h_size })
    }

    pub fn stochastic(rows: Vec<FiniteDistribution>) -> Result<Self> {
        let h_size = rows.first().ok_or(Error::EmptySupport)?.support_size();
        for row in &rows {
            if row.support_size() != h_size {
                return Err(Error::LengthMismatch(row.support_size(), h_size));
            }
        }
        Ok(Learner::Stochastic { rows })
    }

    pub fn num_datasets(&self) -> usize {
        match self {
            Learner::Deterministic { map, .. } => map.len(),
            Learner::Stochastic { rows } => rows.len(),
        }
    }

    pub fn h_size(&self) -> usize {
        match self {
            Learner::Deterministic { h_size, .. } => *h_size,
            Learner::Stochastic { rows } => rows[0].support_size(),
        }
    }

    /// `P_{H|S}(h | s)`; one-hot for deterministic learners.
    #[inline]
    pub fn row_prob(&self, s: usize, h: usize) -> f64 {
        match self {
            Learner::Deterministic { map, .. } => {
                if map[s] == h {
                    1.0
                } else {
                    0.0
                }
            }
            Learner::Stochastic { rows } => rows[s].prob(h),
        }
    }

    /// Canonicalizes to the stochastic representation; exact for
    /// deterministic learners (one-hot rows).
    pub fn to_stochastic(&self) -> Result<Learner> {
        match self {
            Learner::Stochastic { .. } => Ok(self.clone()),
            Learner::Deterministic { map, h_size } => {
                let rows = map
                    .iter()
                    .map(|&h| FiniteDistribution::degenerate(*h_size, h))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Learner::Stochastic { rows })
            }
        }
    }
}

/// A generalization-error target: threshold `eta` and confidence `delta`,
/// both in `(0,1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenErrSpec {
    pub eta: f64,
    pub delta: f64,
}

impl GenErrSpec {
    pub fn new(eta: f64, delta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::invalid_param(format!("eta = {eta} not in (0,1)")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid_param(format!("delta = {delta} not in (0,1)")));
        }
        Ok(GenErrSpec { eta, delta })
    }
}
