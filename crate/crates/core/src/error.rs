use thiserror::Error;

use crate::arithmetic_datum::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root datum type `{0}`")]
    UnsupportedType(String),
    #[error("root datum of rank 0 requested for type `{0}`")]
    RankZero(String),
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Weyl group exceeds the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("linearly dependent family: {0}")]
    DependentFamily(String),
    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),
    #[error("the split inner form requires a trivial Galois action")]
    NonTrivialAction,
    #[error("Galois action does not preserve the Kostant representatives: {0}")]
    ActionNotStable(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("configuration parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("period datum failed validation:\n{0}")]
    Validation(Box<ValidationReport>),
    #[error("unknown catalog scenario `{0}`")]
    UnknownScenario(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
