use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kernel}: expected {expected}, found {found}")]
    Dimension {
        kernel: String,
        expected: String,
        found: String,
    },

    #[error("{name} row {row} is not a probability vector (sum = {sum:.12}, min = {min})")]
    NotStochastic {
        name: String,
        row: usize,
        sum: f64,
        min: f64,
    },

    #[error("{name}: alphabet must be non-empty")]
    EmptyAlphabet { name: String },

    #[error("{name} has cardinality {size}, above the configured cap {cap}")]
    CardinalityCap { name: String, size: usize, cap: usize },

    #[error("unknown variable `{0}` (expected one of Q, X, Z, Y1, Y2, U1, U2, V1, V2)")]
    UnknownVariable(String),

    #[error("variable {0} appears in more than one argument set")]
    OverlappingVariables(String),

    #[error("invalid rate tuple: {field} {reason}")]
    InvalidTuple { field: &'static str, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed model document: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
