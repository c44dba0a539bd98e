use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid modulus {0}")]
    InvalidModulus(u64),
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("divergent series: {0}")]
    Divergence(String),
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
