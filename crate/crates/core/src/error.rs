use thiserror::Error;

/// Errors raised by the arithmetic and analytic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in `{param}`: {reason}")]
    Domain { param: &'static str, reason: String },

    /// The discriminant is a perfect square, so there is no quadratic character.
    #[error("{0} is a perfect square, not a quadratic discriminant")]
    PerfectSquare(i64),

    #[error("failed to parse {what}: {reason}")]
    Parse { what: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { param, reason: reason.into() }
    }

    /// Name of the offending parameter, if the error is tied to one.
    pub fn param(&self) -> Option<&'static str> {
        match self {
            Error::Domain { param, .. } => Some(param),
            Error::PerfectSquare(_) => Some("delta"),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
