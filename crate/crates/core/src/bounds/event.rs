//! Events on a product alphabet, with fiber extraction.

use crate::error::{Error, Result};
use crate::measures::JointDistribution;

/// An indicator grid over `{0,..,nx-1} x {0,..,ny-1}`. The fiber `E_y` is
/// the x-section `{x : (x,y) in E}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    nx: usize,
    ny: usize,
    indicator: Vec<bool>,
}

impl Event {
    pub fn new(nx: usize, ny: usize, indicator: Vec<bool>) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::EmptySupport);
        }
        if indicator.len() != nx * ny {
            return Err(Error::LengthMismatch(indicator.len(), nx * ny));
        }
        Ok(Event { nx, ny, indicator })
    }

    /// Builds from 0/1 rows; anything other than 0 or 1 is rejected.
    pub fn from_grid(rows: &[Vec<u8>]) -> Result<Self> {
        let nx = rows.len();
        if nx == 0 {
            return Err(Error::EmptySupport);
        }
        let ny = rows[0].len();
        let mut indicator = Vec::with_capacity(nx * ny);
        for row in rows {
            if row.len() != ny {
                return Err(Error::LengthMismatch(row.len(), ny));
            }
            for &v in row {
                match v {
                    0 => indicator.push(false),
                    1 => indicator.push(true),
                    other => {
                        return Err(Error::invalid_param(format!(
                            "event cells must be 0 or 1, got {other}"
                        )))
                    }
                }
            }
        }
        Event::new(nx, ny, indicator)
    }

    pub fn empty(nx: usize, ny: usize) -> Result<Self> {
        Event::new(nx, ny, vec![false; nx * ny])
    }

    pub fn full(nx: usize, ny: usize) -> Result<Self> {
        Event::new(nx, ny, vec![true; nx * ny])
    }

    /// The diagonal `{(i,i)}` of a square alphabet.
    pub fn diagonal(n: usize) -> Result<Self> {
        let mut indicator = vec![false; n * n];
        for i in 0..n {
            indicator[i * n + i] = true;
        }
        Event::new(n, n, indicator)
    }

    /// Builds from a membership predicate.
    pub fn from_fn(nx: usize, ny: usize, f: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut indicator = Vec::with_capacity(nx * ny);
        for x in 0..nx {
            for y in 0..ny {
                indicator.push(f(x, y));
            }
        }
        Event::new(nx, ny, indicator)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.indicator[x * self.ny + y]
    }

    /// The x-indices of the fiber `E_y`.
    pub fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.nx).filter(move |&x| self.contains(x, y))
    }

    /// Checks dimensional compatibility with a joint distribution.
    pub fn check_dims(&self, j: &JointDistribution) -> Result<()> {
        if self.nx != j.nx() || self.ny != j.ny() {
            return Err(Error::DimensionMismatch {
                expected_nx: j.nx(),
                expected_ny: j.ny(),
                got_nx: self.nx,
                got_ny: self.ny,
            });
        }
        Ok(())
    }
}
