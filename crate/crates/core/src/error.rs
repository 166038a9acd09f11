use thiserror::Error;

/// Errors produced by the solver, the samplers, and the harnesses.
#[derive(Debug, Error)]
pub enum Error {
    /// A numeric parameter is outside its legal range (non-finite,
    /// non-positive shape, probability outside its interval, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An operation that needs at least one element received none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// The incumbent arm has no observations, so no prior can be derived
    /// from it. Callers should fall back to the uniform default prior.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An argument left the mathematical domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A run configuration is inconsistent or incomplete.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
