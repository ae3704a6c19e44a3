//! Crate-wide error type.

/// Errors surfaced by the library. `Config` covers invalid scenario/model
/// parameters (CLI exit code 2), `Numerical` covers solver failures
/// (exit code 3).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid config: {0}")]
    Config(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Parse(_) | Error::Domain(_) => 2,
            Error::Numerical(_) => 3,
            Error::Io(_) => 1,
        }
    }
}
