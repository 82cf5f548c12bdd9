//! Divergence orders and Hölder-conjugate pairs.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// How close a finite order must be to 1 before it is treated as exactly 1.
///
/// The prefactor 1/(alpha-1) is numerically catastrophic inside this band;
/// the order-1 case is defined by continuity anyway.
pub const ORDER_ONE_BAND: f64 = 1e-9;

/// An extended positive real order `alpha`, with 1 and infinity as symbolic
/// values so their limit formulas are dispatched exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    One,
    Finite(f64),
    Infinity,
}

impl Order {
    /// Classifies a positive real; values within [`ORDER_ONE_BAND`] of 1
    /// become [`Order::One`], infinite values become [`Order::Infinity`].
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        if alpha.is_infinite() {
            return Ok(Order::Infinity);
        }
        if (alpha - 1.0).abs() < ORDER_ONE_BAND {
            return Ok(Order::One);
        }
        Ok(Order::Finite(alpha))
    }

    pub fn one() -> Self {
        Order::One
    }

    pub fn infinity() -> Self {
        Order::Infinity
    }

    /// The order as an extended real.
    pub fn value(self) -> f64 {
        match self {
            Order::One => 1.0,
            Order::Finite(a) => a,
            Order::Infinity => f64::INFINITY,
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, Order::One)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Order::Infinity)
    }

    /// Finite and different from 1.
    pub fn as_finite(self) -> Option<f64> {
        match self {
            Order::Finite(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::One => write!(f, "1"),
            Order::Finite(a) => write!(f, "{a}"),
            Order::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Order::Infinity),
            "1" => Ok(Order::One),
            other => {
                let v: f64 = other
                    .parse()
                    .map_err(|_| Error::invalid_param(format!("unparseable order: {other:?}")))?;
                Order::new(v)
            }
        }
    }
}

/// Hölder conjugate `gamma = alpha/(alpha-1)`, with `gamma = +inf` for
/// `alpha = 1` and `gamma = 1` for `alpha = inf`. Rejects `alpha < 1`.
pub fn conjugate(alpha: Order) -> Result<f64> {
    match alpha {
        Order::One => Ok(f64::INFINITY),
        Order::Infinity => Ok(1.0),
        Order::Finite(a) => {
            if a < 1.0 {
                Err(Error::OrderBelowOne(a))
            } else {
                Ok(a / (a - 1.0))
            }
        }
    }
}

/// The exponent pair `(alpha, alpha')` of the two-step Hölder bound,
/// together with the derived conjugates `gamma`, `gamma'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderPair {
    alpha: Order,
    alpha_prime: Order,
    gamma: f64,
    gamma_prime: f64,
}

impl HolderPair {
    /// Both orders must be >= 1.
    pub fn new(alpha: Order, alpha_prime: Order) -> Result<Self> {
        let gamma = conjugate(alpha)?;
        let gamma_prime = conjugate(alpha_prime)?;
        Ok(HolderPair {
            alpha,
            alpha_prime,
            gamma,
            gamma_prime,
        })
    }

    /// The diagonal choice `alpha' = alpha`.
    pub fn diagonal(alpha: Order) -> Result<Self> {
        Self::new(alpha, alpha)
    }

    pub fn alpha(&self) -> Order {
        self.alpha
    }

    pub fn alpha_prime(&self) -> Order {
        self.alpha_prime
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gamma_prime(&self) -> f64 {
        self.gamma_prime
    }
}
