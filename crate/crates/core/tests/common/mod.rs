//! Seeded instance generators shared by the integration suites.

use infobounds::bounds::Event;
use infobounds::{FiniteDistribution, JointDistribution};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_distribution(rng: &mut ChaCha8Rng, size: usize, min_weight: f64) -> FiniteDistribution {
    let weights: Vec<f64> = (0..size)
        .map(|_| min_weight + rng.random::<f64>())
        .collect();
    FiniteDistribution::from_weights(weights).expect("positive weights")
}

/// Full-support joint with cell weights in `[min_weight, 1 + min_weight)`.
pub fn random_full_joint(rng: &mut ChaCha8Rng, nx: usize, ny: usize, min_weight: f64) -> JointDistribution {
    let weights: Vec<f64> = (0..nx * ny)
        .map(|_| min_weight + rng.random::<f64>())
        .collect();
    JointDistribution::from_weights(nx, ny, weights).expect("positive weights")
}

/// Joint with cells zeroed independently with probability `sparsity`
/// (at least one cell stays positive).
pub fn random_sparse_joint(rng: &mut ChaCha8Rng, nx: usize, ny: usize, sparsity: f64) -> JointDistribution {
    let mut weights: Vec<f64> = (0..nx * ny)
        .map(|_| {
            if rng.random::<f64>() < sparsity {
                0.0
            } else {
                1e-3 + rng.random::<f64>()
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0.0) {
        let fix = rng.random_range(0..weights.len());
        weights[fix] = 1.0;
    }
    JointDistribution::from_weights(nx, ny, weights).expect("some positive weight")
}

pub fn random_event(rng: &mut ChaCha8Rng, nx: usize, ny: usize) -> Event {
    let cells: Vec<bool> = (0..nx * ny).map(|_| rng.random::<bool>()).collect();
    Event::new(nx, ny, cells).expect("dimensions match")
}

/// Row-stochastic garbling kernel from `ny` to `ny_out` symbols.
pub fn random_garbling(rng: &mut ChaCha8Rng, ny: usize, ny_out: usize) -> Vec<Vec<f64>> {
    (0..ny)
        .map(|_| {
            let w: Vec<f64> = (0..ny_out).map(|_| 1e-3 + rng.random::<f64>()).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|v| v / s).collect()
        })
        .collect()
}
