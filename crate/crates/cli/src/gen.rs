//! Seeded random problem-instance emitter.

use crate::io::{LearnerSpec, ProblemFile};
use anyhow::{bail, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct GenOptions {
    pub seed: u64,
    pub z_size: usize,
    pub n: usize,
    pub h_size: usize,
    pub learner: String,
    pub temperature: f64,
}

/// Emits a problem file with a seeded random data distribution and loss
/// grid; byte-identical for identical options.
pub fn generate_problem(opts: &GenOptions) -> Result<String> {
    if opts.z_size == 0 || opts.h_size == 0 || opts.n == 0 {
        bail!("z_size, h_size, and n must all be >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let weights: Vec<f64> = (0..opts.z_size).map(|_| 0.05 + rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let data_dist: Vec<f64> = weights.iter().map(|w| w / total).collect();

    let loss: Vec<Vec<f64>> = (0..opts.h_size)
        .map(|_| (0..opts.z_size).map(|_| rng.random::<f64>()).collect())
        .collect();

    let learner = match opts.learner.as_str() {
        "erm" => LearnerSpec {
            kind: "erm".into(),
            tie_break: Some("lowest_index".into()),
            temperature: None,
            map: None,
            rows: None,
        },
        "gibbs" => {
            if !(opts.temperature > 0.0) {
                bail!("--temperature must be positive for a gibbs learner");
            }
            LearnerSpec {
                kind: "gibbs".into(),
                tie_break: None,
                temperature: Some(opts.temperature),
                map: None,
                rows: None,
            }
        }
        other => bail!("unknown learner kind {other:?} (erm|gibbs)"),
    };

    let file = ProblemFile {
        z_size: opts.z_size,
        n: opts.n,
        h_size: opts.h_size,
        data_dist,
        loss,
        sigma: None,
        seed: Some(opts.seed),
        cap: None,
        learner,
    };
    Ok(toml::to_string(&file)?)
}
