//! Information-measure bounds on finite alphabets, verifiable by exact
//! enumeration.
//!
//! The crate has four layers:
//!
//! - [`measures`]: Rényi α-divergence, Sibson α-mutual information (closed
//!   form plus a definitional minimization oracle), maximal leakage, and
//!   Shannon mutual information.
//! - [`bounds`]: the two-exponent Hölder bound relating `P_XY(E)` to
//!   `P_X P_Y(E)`, its α-divergence / Sibson-MI / maximal-leakage
//!   specializations, and the α trade-off sweep.
//! - [`learning`]: finite learning problems, learners as channels, the exact
//!   joint over (dataset, hypothesis), generalization-error events, the
//!   concentration-based fiber bounds, and the comparison-table formulas.
//! - [`expectation`]: the tail-to-expectation lemma and expected
//!   generalization-error bounds, checked against exact enumeration.
//!
//! Everything is exact (up to f64) and deterministic: all randomness in
//! tests is seeded, and all minimizations are grid searches with
//! deterministic tie-breaking. Values are in nats throughout; convert to
//! bits only at the presentation layer.

pub mod bounds;
pub mod error;
pub mod expectation;
pub mod learning;
pub mod measures;

pub use error::{Error, Result};
pub use measures::{FiniteDistribution, JointDistribution, Nats, Order};
