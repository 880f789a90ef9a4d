use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid exponent p = {0}: must be finite and > 0")]
    InvalidExponent(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An asymptotic formula or quantile was evaluated outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series diverges for p = {0} (need p > 1)")]
    DivergentSeries(f64),

    #[error("{n_types} coupon types exceeds the subset-enumeration cap of {cap}")]
    SizeLimit { n_types: usize, cap: usize },

    /// Quadrature did not reach the requested tolerance. The best estimate is kept.
    #[error(
        "accuracy not reached: estimate {estimate:.9e} with error {abs_error:.3e} after {subdivisions} subdivisions"
    )]
    Accuracy {
        estimate: f64,
        abs_error: f64,
        subdivisions: usize,
    },

    #[error("episode exceeded {cap} draws without completing the collection")]
    Runaway { cap: u64 },
}

impl Error {
    /// True for numerical-accuracy failures, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Accuracy { .. } | Error::Runaway { .. })
    }
}
