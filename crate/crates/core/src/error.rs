use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("tensor fails curvature symmetries ({0} violated quadruples)")]
    InvalidTensor(usize),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("ambiguous eigenvalue continuation: {0}")]
    AmbiguousContinuation(String),

    #[error("not constructible: {0}")]
    NotConstructible(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
