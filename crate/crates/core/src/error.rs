use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed caller input: bad permutation, mismatched dimensions, bad JSON.
    #[error("input error: {0}")]
    Input(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("precision cap exhausted: {0}")]
    Precision(String),
    /// An operation was applied outside its domain, e.g. the residue of a
    /// non-integral element.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal consistency assertion failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
    /// A structural statement that must hold for every finite group failed.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("io error: {0}")]
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
        Error::Input(format!("json: {e}"))
    }
}

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
