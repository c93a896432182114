use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid substitution: scale factor must be nonzero")]
    InvalidSubstitution,
    #[error("unknown Coxeter type `{0}`")]
    UnknownCoxeterType(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("variable `{0}` is reserved")]
    ReservedVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported cache format version {0}")]
    CacheVersion(u32),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
