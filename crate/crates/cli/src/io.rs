//! Input formats: CSV grids for joints and events, TOML documents for
//! problem and table-parameter specifications. Parsing is strict: unknown
//! keys, wrong counts, and non-normalized distributions are hard errors
//! with a line or field diagnostic.

use anyhow::{anyhow, bail, Context, Result};
use infobounds::bounds::Event;
use infobounds::learning::{
    erm_learner, gibbs_learner, Learner, LearningProblem, TieBreak,
};
use infobounds::measures::Order;
use infobounds::{FiniteDistribution, JointDistribution};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

/// Reads a grid file: header `nx,ny`, a dimensions row, then `nx` rows of
/// `ny` comma-separated values.
fn read_grid(path: &Path) -> Result<(usize, usize, Vec<Vec<f64>>)> {
    let name = path.display();
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {name}"))?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| anyhow!("{name}: empty file, expected header \"nx,ny\""))?;
    if header.trim() != "nx,ny" {
        bail!("{name}:1: expected header \"nx,ny\", got {header:?}");
    }
    let (_, dims) = lines
        .next()
        .ok_or_else(|| anyhow!("{name}: missing dimensions row"))?;
    let parts: Vec<&str> = dims.trim().split(',').collect();
    if parts.len() != 2 {
        bail!("{name}:2: dimensions row must be \"<nx>,<ny>\", got {dims:?}");
    }
    let nx: usize = parts[0]
        .trim()
        .parse()
        .with_context(|| format!("{name}:2: unparseable nx {:?}", parts[0]))?;
    let ny: usize = parts[1]
        .trim()
        .parse()
        .with_context(|| format!("{name}:2: unparseable ny {:?}", parts[1]))?;

    let mut rows = Vec::with_capacity(nx);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if rows.len() == nx {
            bail!("{name}:{lineno}: extra row beyond the declared {nx}");
        }
        let mut row = Vec::with_capacity(ny);
        for cell in line.trim().split(',') {
            let v: f64 = cell
                .trim()
                .parse()
                .with_context(|| format!("{name}:{lineno}: unparseable value {cell:?}"))?;
            row.push(v);
        }
        if row.len() != ny {
            bail!("{name}:{lineno}: expected {ny} values, got {}", row.len());
        }
        rows.push(row);
    }
    if rows.len() != nx {
        bail!("{name}: expected {nx} rows, got {}", rows.len());
    }
    Ok((nx, ny, rows))
}

pub fn read_joint(path: &Path) -> Result<JointDistribution> {
    let (_, _, rows) = read_grid(path)?;
    JointDistribution::from_rows(&rows)
        .with_context(|| format!("{}: invalid joint distribution", path.display()))
}

pub fn read_event(path: &Path) -> Result<Event> {
    let (_, _, rows) = read_grid(path)?;
    let cells: Result<Vec<Vec<u8>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| {
                    if v == 0.0 {
                        Ok(0u8)
                    } else if v == 1.0 {
                        Ok(1u8)
                    } else {
                        Err(anyhow!(
                            "{}: event cells must be 0 or 1, got {v}",
                            path.display()
                        ))
                    }
                })
                .collect()
        })
        .collect();
    Event::from_grid(&cells?).with_context(|| format!("{}: invalid event", path.display()))
}

/// Learner section of a problem file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LearnerSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<f64>>>,
}

/// A learning problem plus learner, as a strict TOML document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub z_size: usize,
    pub n: usize,
    pub h_size: usize,
    pub data_dist: Vec<f64>,
    pub loss: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    pub learner: LearnerSpec,
}

impl ProblemFile {
    pub fn parse(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: ProblemFile = toml::from_str(&text)
            .map_err(|e| anyhow!("{}: {e}", path.display()))?;
        Ok(file)
    }

    /// Validates and builds the core problem and learner.
    pub fn build(&self, cap_override: Option<usize>) -> Result<(LearningProblem, Learner)> {
        if self.data_dist.len() != self.z_size {
            bail!(
                "field data_dist: expected {} entries, got {}",
                self.z_size,
                self.data_dist.len()
            );
        }
        if self.loss.len() != self.h_size {
            bail!("field loss: expected {} rows, got {}", self.h_size, self.loss.len());
        }
        let data = FiniteDistribution::new(self.data_dist.clone())
            .map_err(|e| anyhow!("field data_dist: {e}"))?;
        let mut problem = match self.sigma {
            None => LearningProblem::new(data, self.n, self.loss.clone())
                .map_err(|e| anyhow!("field loss: {e}"))?,
            Some(sigma) => LearningProblem::with_sigma(data, self.n, self.loss.clone(), sigma)
                .map_err(|e| anyhow!("field sigma/loss: {e}"))?,
        };
        if let Some(cap) = cap_override.or(self.cap) {
            problem.set_cap(cap);
        }

        let learner = match self.learner.kind.as_str() {
            "erm" => {
                let tie = match self.learner.tie_break.as_deref() {
                    None | Some("lowest_index") => TieBreak::LowestIndex,
                    Some("uniform_random") => TieBreak::UniformRandom,
                    Some(other) => bail!("field learner.tie_break: unknown rule {other:?}"),
                };
                require_absent(&self.learner.temperature, "learner.temperature", "erm")?;
                require_absent(&self.learner.map, "learner.map", "erm")?;
                require_absent(&self.learner.rows, "learner.rows", "erm")?;
                erm_learner(&problem, tie).map_err(|e| anyhow!("building erm learner: {e}"))?
            }
            "gibbs" => {
                let t = self
                    .learner
                    .temperature
                    .ok_or_else(|| anyhow!("field learner.temperature: required for gibbs"))?;
                require_absent(&self.learner.tie_break, "learner.tie_break", "gibbs")?;
                require_absent(&self.learner.map, "learner.map", "gibbs")?;
                require_absent(&self.learner.rows, "learner.rows", "gibbs")?;
                gibbs_learner(&problem, t).map_err(|e| anyhow!("building gibbs learner: {e}"))?
            }
            "deterministic" => {
                let map = self
                    .learner
                    .map
                    .clone()
                    .ok_or_else(|| anyhow!("field learner.map: required for deterministic"))?;
                Learner::deterministic(map, self.h_size)
                    .map_err(|e| anyhow!("field learner.map: {e}"))?
            }
            "stochastic" => {
                let rows = self
                    .learner
                    .rows
                    .clone()
                    .ok_or_else(|| anyhow!("field learner.rows: required for stochastic"))?;
                let rows = rows
                    .into_iter()
                    .enumerate()
                    .map(|(i, r)| {
                        FiniteDistribution::new(r)
                            .map_err(|e| anyhow!("field learner.rows[{i}]: {e}"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Learner::stochastic(rows).map_err(|e| anyhow!("field learner.rows: {e}"))?
            }
            other => bail!("field learner.kind: unknown kind {other:?}"),
        };

        let expected = infobounds::learning::dataset_space(&problem)
            .map_err(|e| anyhow!("dataset space: {e}"))?
            .count();
        if learner.num_datasets() != expected {
            bail!(
                "field learner: expected {expected} dataset rows (z_size^n), got {}",
                learner.num_datasets()
            );
        }
        if learner.h_size() != self.h_size {
            bail!(
                "field learner: expected {} hypotheses, got {}",
                self.h_size,
                learner.h_size()
            );
        }
        Ok((problem, learner))
    }
}

fn require_absent<T>(value: &Option<T>, field: &str, kind: &str) -> Result<()> {
    if value.is_some() {
        bail!("field {field}: not allowed for learner kind {kind:?}");
    }
    Ok(())
}

/// Parameters of the comparison table, as a strict TOML document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub n: usize,
    pub eta: f64,
    pub delta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leakage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vc_k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dp_epsilon: Option<f64>,
}

impl ParamsFile {
    pub fn parse(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: ParamsFile = toml::from_str(&text)
            .map_err(|e| anyhow!("{}: {e}", path.display()))?;
        Ok(file)
    }

    pub fn sibson_pair(&self) -> Result<Option<(f64, Order)>> {
        match (self.i_alpha, self.alpha.as_deref()) {
            (None, None) => Ok(None),
            (Some(i), Some(a)) => {
                let order: Order = a
                    .parse()
                    .map_err(|e| anyhow!("field alpha: {e}"))?;
                Ok(Some((i, order)))
            }
            (Some(_), None) => Err(anyhow!("field alpha: required when i_alpha is given")),
            (None, Some(_)) => Err(anyhow!("field i_alpha: required when alpha is given")),
        }
    }
}

/// Parses a comma-separated order list such as `0.5,2,inf`.
pub fn parse_order_list(s: &str) -> Result<Vec<Order>> {
    let orders: Result<Vec<Order>> = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<Order>()
                .map_err(|e| anyhow!("order list entry {part:?}: {e}"))
        })
        .collect();
    let orders = orders?;
    if orders.is_empty() {
        bail!("empty order list");
    }
    Ok(orders)
}

/// Parses a comma-separated list of eta values in (0,1).
pub fn parse_eta_list(s: &str) -> Result<Vec<f64>> {
    let etas: Result<Vec<f64>> = s
        .split(',')
        .map(|part| {
            let v: f64 = part
                .trim()
                .parse()
                .map_err(|_| anyhow!("eta list entry {part:?} is not a number"))?;
            if !(v > 0.0 && v < 1.0) {
                bail!("eta {v} not in (0,1)");
            }
            Ok(v)
        })
        .collect();
    let etas = etas?;
    if etas.is_empty() {
        bail!("empty eta list");
    }
    Ok(etas)
}

/// SHA-256 of a file, hex-encoded, for the run manifest.
pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(hex_string(&hasher.finalize()))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
