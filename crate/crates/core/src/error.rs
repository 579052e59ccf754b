use thiserror::Error;

/// Errors raised by the library and the `hjlab` frontend.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (negative x, U <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A value cannot be represented or a bracket could not be found.
    #[error("range error: {0}")]
    Range(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// An exact computation would exceed its atom or enumeration budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
