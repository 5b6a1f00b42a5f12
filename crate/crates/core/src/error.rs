use thiserror::Error;

/// Failures raised by state construction, linear algebra and the measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates a structural or physical invariant. `invariant`
    /// names the failing property (e.g. `"trace"`, `"hermitian"`).
    #[error("invalid input ({invariant}): {detail}")]
    Validation { invariant: &'static str, detail: String },

    /// The requested object would exceed the configured dimension cap.
    #[error("dimension {requested} exceeds the configured maximum {limit}")]
    Capacity { requested: usize, limit: usize },

    /// An iterative routine failed to converge.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// The operation is only defined for inputs the caller did not supply,
    /// typically a globally pure state.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn validation(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation { invariant, detail: detail.into() }
    }

    /// The invariant name for validation failures.
    pub fn invariant(&self) -> Option<&'static str> {
        match self {
            Error::Validation { invariant, .. } => Some(invariant),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
