use thiserror::Error;

/// Errors raised by evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid order {0}: must exceed -1")]
    InvalidOrder(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid lambda {0}")]
    InvalidLambda(f64),
    #[error("invalid c = {0}: nonpositive integer")]
    InvalidC(f64),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("series truncation could not be certified after {terms} terms (tail bound {bound:e})")]
    Truncation { terms: usize, bound: f64 },
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("tail bound failure: integrand not negligible before u = {0}")]
    TailBound(f64),
    #[error("decay failure: {0}")]
    Decay(String),
    #[error("quadrature rule does not match the requested weight: {0}")]
    RuleMismatch(String),
    #[error("limit at the origin does not stabilize: {0}")]
    OriginSingularity(String),
    #[error("derivative estimation failed: {0}")]
    DerivativeEstimation(String),
    #[error("insufficient range: {0}")]
    InsufficientRange(String),
}

impl Error {
    /// True for failures of numerical certification (tail bounds, truncation,
    /// quadrature convergence) as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Truncation { .. }
                | Error::Quadrature(_)
                | Error::TailBound(_)
                | Error::Decay(_)
                | Error::OriginSingularity(_)
                | Error::DerivativeEstimation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
