use thiserror::Error;

/// Errors surfaced by the algebra kernel.
///
/// Resource caps are structured failures: a capped computation never returns
/// a partial or wrong result.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("zero denominator in coefficient")]
    ZeroDenominator,

    #[error("coefficient {0} is not invertible mod {1}")]
    NotInvertibleModP(String, u32),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("resource cap exceeded during {0} (limit {1})")]
    CapExceeded(&'static str, u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
