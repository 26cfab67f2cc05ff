use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared identifier `{0}`")]
    UndeclaredIdentifier(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("polynomial does not have the required shape: {0}")]
    Shape(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
