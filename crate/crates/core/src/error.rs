use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped into the four classes the command-line front end
/// reports through its exit status; see [`Error::class`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("root isolation did not reach radius {requested:e} (achieved {achieved:e})")]
    Convergence { requested: f64, achieved: f64 },

    #[error("ambiguous: {0}")]
    Ambiguous(String),

    #[error("search budget of {budget} nodes exhausted before the search space was covered")]
    Inconclusive { budget: u64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

/// Coarse classification of an [`enum@Error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: malformed text, out-of-range parameters, unmet preconditions.
    Validation,
    /// Numerical or search machinery could not finish.
    Computation,
    /// A mathematical identity that must hold did not.
    Invariant,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } | Error::Domain(_) | Error::Unsupported(_) | Error::Precondition(_) => {
                ErrorClass::Validation
            }
            Error::Convergence { .. } | Error::Ambiguous(_) | Error::Inconclusive { .. } | Error::Internal(_) => {
                ErrorClass::Computation
            }
            Error::InvariantViolation(_) => ErrorClass::Invariant,
        }
    }

    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Domain(_) => "domain",
            Error::Unsupported(_) => "unsupported",
            Error::Precondition(_) => "precondition",
            Error::Convergence { .. } => "convergence",
            Error::Ambiguous(_) => "ambiguous",
            Error::Inconclusive { .. } => "inconclusive",
            Error::InvariantViolation(_) => "invariant",
            Error::Internal(_) => "internal",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
