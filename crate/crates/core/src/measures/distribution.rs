//! Probability mass on indexed finite supports.

use crate::error::{Error, Result};

/// Tolerance on the total-mass invariant.
pub const MASS_TOL: f64 = 1e-12;

fn check_masses(mass: &[f64]) -> Result<f64> {
    if mass.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut sum = 0.0;
    for (i, &v) in mass.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFiniteMass { index: i, value: v });
        }
        if v < 0.0 {
            return Err(Error::NegativeMass { index: i, value: v });
        }
        sum += v;
    }
    Ok(sum)
}

/// Probability mass function on `{0, .., k-1}`.
///
/// Construction enforces nonnegativity and normalization to 1 within
/// [`MASS_TOL`]; violations are errors, never silently repaired.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    mass: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        let sum = check_masses(&mass)?;
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::NotNormalized { sum, tol: MASS_TOL });
        }
        Ok(FiniteDistribution { mass })
    }

    /// Normalizes a nonnegative weight vector. Fails on zero total weight.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        let sum = check_masses(&weights)?;
        if sum <= 0.0 {
            return Err(Error::invalid_param("cannot normalize: total weight is 0"));
        }
        let mass = weights.into_iter().map(|w| w / sum).collect();
        Ok(FiniteDistribution { mass })
    }

    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptySupport);
        }
        Ok(FiniteDistribution {
            mass: vec![1.0 / k as f64; k],
        })
    }

    /// Point mass at `index`.
    pub fn degenerate(k: usize, index: usize) -> Result<Self> {
        if index >= k {
            return Err(Error::IndexOutOfRange { index, size: k });
        }
        let mut mass = vec![0.0; k];
        mass[index] = 1.0;
        Ok(FiniteDistribution { mass })
    }

    /// `(p, 1-p)` on a two-symbol alphabet.
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid_param(format!("bernoulli parameter {p} not in [0,1]")));
        }
        Ok(FiniteDistribution { mass: vec![p, 1.0 - p] })
    }

    pub fn support_size(&self) -> usize {
        self.mass.len()
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    #[inline]
    pub fn prob(&self, i: usize) -> f64 {
        self.mass[i]
    }

    /// Indices carrying positive mass.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, _)| i)
    }
}

/// Probability mass on a product alphabet `{0,..,nx-1} x {0,..,ny-1}`,
/// stored row-major. Marginals and conditional rows are derived.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    nx: usize,
    ny: usize,
    mass: Vec<f64>,
}

impl JointDistribution {
    pub fn new(nx: usize, ny: usize, mass: Vec<f64>) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::EmptySupport);
        }
        if mass.len() != nx * ny {
            return Err(Error::LengthMismatch(mass.len(), nx * ny));
        }
        let sum = check_masses(&mass)?;
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::NotNormalized { sum, tol: MASS_TOL });
        }
        Ok(JointDistribution { nx, ny, mass })
    }

    /// Builds from rows (each row is the mass over y for one x).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nx = rows.len();
        if nx == 0 {
            return Err(Error::EmptySupport);
        }
        let ny = rows[0].len();
        for r in rows {
            if r.len() != ny {
                return Err(Error::LengthMismatch(r.len(), ny));
            }
        }
        Self::new(nx, ny, rows.concat())
    }

    /// Normalizes a nonnegative weight grid.
    pub fn from_weights(nx: usize, ny: usize, weights: Vec<f64>) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::EmptySupport);
        }
        if weights.len() != nx * ny {
            return Err(Error::LengthMismatch(weights.len(), nx * ny));
        }
        let sum = check_masses(&weights)?;
        if sum <= 0.0 {
            return Err(Error::invalid_param("cannot normalize: total weight is 0"));
        }
        let mass = weights.into_iter().map(|w| w / sum).collect();
        Ok(JointDistribution { nx, ny, mass })
    }

    /// Product joint `P_X (x) P_Y` of two marginals.
    pub fn product(px: &FiniteDistribution, py: &FiniteDistribution) -> Self {
        let nx = px.support_size();
        let ny = py.support_size();
        let mut mass = Vec::with_capacity(nx * ny);
        for x in 0..nx {
            for y in 0..ny {
                mass.push(px.prob(x) * py.prob(y));
            }
        }
        JointDistribution { nx, ny, mass }
    }

    /// Couples an input distribution with a channel (rows `P_{Y|X=x}`).
    pub fn from_channel(px: &FiniteDistribution, channel: &[FiniteDistribution]) -> Result<Self> {
        let nx = px.support_size();
        if channel.len() != nx {
            return Err(Error::LengthMismatch(channel.len(), nx));
        }
        let ny = channel[0].support_size();
        let mut mass = Vec::with_capacity(nx * ny);
        for (x, row) in channel.iter().enumerate() {
            if row.support_size() != ny {
                return Err(Error::LengthMismatch(row.support_size(), ny));
            }
            for y in 0..ny {
                mass.push(px.prob(x) * row.prob(y));
            }
        }
        JointDistribution::new(nx, ny, mass)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.mass[x * self.ny + y]
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    pub fn marginal_x(&self) -> FiniteDistribution {
        let mut m = vec![0.0; self.nx];
        for x in 0..self.nx {
            for y in 0..self.ny {
                m[x] += self.prob(x, y);
            }
        }
        FiniteDistribution { mass: m }
    }

    pub fn marginal_y(&self) -> FiniteDistribution {
        let mut m = vec![0.0; self.ny];
        for x in 0..self.nx {
            for y in 0..self.ny {
                m[y] += self.prob(x, y);
            }
        }
        FiniteDistribution { mass: m }
    }

    /// Conditional row `P_{Y|X=x}`; defined exactly when the x-marginal is
    /// positive.
    pub fn conditional_row(&self, x: usize) -> Option<FiniteDistribution> {
        if x >= self.nx {
            return None;
        }
        let px: f64 = (0..self.ny).map(|y| self.prob(x, y)).sum();
        if px <= 0.0 {
            return None;
        }
        let mass = (0..self.ny).map(|y| self.prob(x, y) / px).collect();
        Some(FiniteDistribution { mass })
    }

    /// The joint flattened to a distribution on the `nx*ny` product alphabet
    /// (row-major cell order).
    pub fn flatten(&self) -> FiniteDistribution {
        FiniteDistribution {
            mass: self.mass.clone(),
        }
    }

    /// Post-processes Y through a row-stochastic kernel `K[y][y']`,
    /// producing the joint of `(X, Y')`.
    pub fn garble_y(&self, kernel: &[Vec<f64>]) -> Result<Self> {
        if kernel.len() != self.ny {
            return Err(Error::LengthMismatch(kernel.len(), self.ny));
        }
        let ny2 = kernel
            .first()
            .map(|r| r.len())
            .ok_or(Error::EmptySupport)?;
        for (y, row) in kernel.iter().enumerate() {
            if row.len() != ny2 {
                return Err(Error::LengthMismatch(row.len(), ny2));
            }
            let s = check_masses(row)?;
            if (s - 1.0).abs() > MASS_TOL {
                return Err(Error::invalid_param(format!(
                    "kernel row {y} not stochastic: sum={s}"
                )));
            }
        }
        let mut mass = vec![0.0; self.nx * ny2];
        for x in 0..self.nx {
            for y in 0..self.ny {
                let m = self.prob(x, y);
                if m == 0.0 {
                    continue;
                }
                for (y2, &k) in kernel[y].iter().enumerate() {
                    mass[x * ny2 + y2] += m * k;
                }
            }
        }
        Ok(JointDistribution {
            nx: self.nx,
            ny: ny2,
            mass,
        })
    }
}

/// An information quantity in nats; an extended real, `+inf` first-class.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Nats(f64);

impl Nats {
    pub const ZERO: Nats = Nats(0.0);
    pub const INFINITY: Nats = Nats(f64::INFINITY);

    pub fn new(v: f64) -> Self {
        Nats(v)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Conversion for the presentation layer only.
    pub fn to_bits(self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }
}

impl std::fmt::Display for Nats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
