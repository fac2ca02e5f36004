use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("numerical contract violated: {0}")]
    Contract(String),
    #[error("unknown function '{0}'")]
    UnknownFunction(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("too few usable points for a fit: {got} (need {need})")]
    TooFewPoints { got: usize, need: usize },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn out_of_range(what: &'static str, value: f64, range: &'static str) -> Error {
    Error::OutOfRange { what, value, range }
}
