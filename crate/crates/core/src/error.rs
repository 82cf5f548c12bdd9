use thiserror::Error;

/// Errors for distribution construction and measure/bound evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("empty support")]
    EmptySupport,

    #[error("negative mass at index {index}: {value}")]
    NegativeMass { index: usize, value: f64 },

    #[error("non-finite mass at index {index}: {value}")]
    NonFiniteMass { index: usize, value: f64 },

    #[error("mass not normalized: sum={sum} (must be 1 within {tol})")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("grid dimension mismatch: expected {expected_nx}x{expected_ny}, got {got_nx}x{got_ny}")]
    DimensionMismatch {
        expected_nx: usize,
        expected_ny: usize,
        got_nx: usize,
        got_ny: usize,
    },

    #[error("invalid order alpha={0}: must be a positive real, \"1\", or \"inf\"")]
    InvalidOrder(f64),

    #[error("order alpha={0} out of range: this operation requires alpha >= 1")]
    OrderBelowOne(f64),

    #[error("order must be finite and different from 1 for this operation")]
    DegenerateOrder,

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("output alphabet too large for the minimization oracle: ny={ny} (max {max})")]
    AlphabetTooLarge { ny: usize, max: usize },

    #[error("resolution {got} too small (minimum {min})")]
    ResolutionTooSmall { got: usize, min: usize },

    #[error("enumeration cap exceeded: {required} datasets > cap {cap}")]
    CapExceeded { required: u128, cap: usize },

    #[error("empty order grid")]
    EmptyGrid,

    #[error("learner is not exchangeable: rows differ between permuted datasets {0} and {1}")]
    NotExchangeable(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tail-expectation bound undefined: ln(2b) <= 0 for b={0}")]
    UndefinedTailBound(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid_param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
