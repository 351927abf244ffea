use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    /// An argument violated an operation's precondition.
    #[error("rejected input: {0}")]
    Rejected(String),

    /// The series is outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range (order {order})")]
    Range { index: usize, order: usize },

    /// A construction step produced a value that contradicts a structural
    /// property it relies on; indicates a bug upstream.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
