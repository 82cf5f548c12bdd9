//! Information measures on finite alphabets: Rényi divergence, Sibson
//! α-mutual information, maximal leakage, and their limit cases, all in
//! nats and in numerically stable log-domain arithmetic.

mod distribution;
mod divergence;
pub mod logdomain;
mod order;
mod sibson;

pub use distribution::{FiniteDistribution, JointDistribution, Nats, MASS_TOL};
pub use divergence::{kl_divergence, renyi_divergence};
pub use order::{conjugate, HolderPair, Order, ORDER_ONE_BAND};
pub use sibson::{
    maximal_leakage, mutual_information, optimal_output_distribution, sibson_mi,
    sibson_mi_minimization_oracle, sibson_oracle_with_argmin, ORACLE_MAX_NY,
    ORACLE_MIN_RESOLUTION,
};
