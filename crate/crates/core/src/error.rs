use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {0}-{1} is not in the graph")]
    NotAnEdge(usize, usize),
    #[error("not a perfect matching")]
    NotPerfectMatching,
    #[error("graph has no perfect matching")]
    NotMatchable,
    #[error("oracle budget exceeded")]
    BudgetExceeded,
    #[error("vertex {0} has no twin")]
    NoTwin(usize),
    #[error("no balanced critical set")]
    NoBalancedCriticalSet,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
