use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The precision policy could not certify a result to the requested
    /// tolerance within the allowed precision budget.
    #[error("insufficient precision: {what} not certified (needed > {needed_bits} bits, cap {max_bits} bits)")]
    InsufficientPrecision {
        what: String,
        needed_bits: u32,
        max_bits: u32,
    },

    #[error("invalid precision context: {0}")]
    Precision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of numeric certification, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::InsufficientPrecision { .. } | Error::Format(_))
    }
}
