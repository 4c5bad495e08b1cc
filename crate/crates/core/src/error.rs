use thiserror::Error;

/// Errors raised by the numerical and model code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// The result is not representable as a finite `f64`.
    #[error("overflow evaluating {0}")]
    Overflow(&'static str),

    /// Adaptive quadrature ran out of subdivisions.
    #[error(
        "quadrature did not converge in {subdivisions} subdivisions \
         (estimate {estimate:e}, error {error:e})"
    )]
    NonConvergence {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },

    /// Root bracketing failed.
    #[error("could not bracket root: {0}")]
    Bracket(String),

    /// A model parameter violated its invariant.
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
