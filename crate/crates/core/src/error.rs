use thiserror::Error;

/// Errors raised by constructions and loaders.
///
/// Verification failures are not errors: they are recorded as failing
/// entries of a [`VerificationReport`](crate::report::VerificationReport).
#[derive(Debug, Error)]
pub enum Error {
    /// Ill-formed input; `field` names the offending field.
    #[error("invalid input in `{field}`: {message}")]
    Input { field: String, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Input outside the supported class (e.g. non-Kac antipode).
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A construction that cannot fail for valid input did; signals numerical breakdown.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("Gram matrix is not Hermitian positive definite")]
    NotPositiveDefinite,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Input {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    pub fn inconsistent(message: impl Into<String>) -> Self {
        Error::Inconsistent(message.into())
    }

    /// True for errors caused by the user's input rather than by a failed identity.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input { .. } | Error::Io(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
