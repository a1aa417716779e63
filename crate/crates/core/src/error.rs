use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },

    #[error("determinant {0} is not a unit of Z[t, t^-1]")]
    NonUnitDeterminant(String),

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("parse error at byte {position}: expected one of {}", expected.join(", "))]
    Parse { position: usize, expected: Vec<String> },

    #[error("unknown binding `{0}`")]
    UnknownName(String),

    #[error("flattened word would have {length} letters, over the cap of {cap}")]
    FlattenCap { length: u128, cap: usize },

    #[error("depth {actual} is smaller than the requested degree {requested}")]
    DepthTooSmall { requested: u32, actual: String },

    #[error("matrix is not in graded piece G_{degree}: {reason}")]
    NotInGradedPiece { degree: u32, reason: String },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("kernel relation fails: sum of brackets is nonzero")]
    KernelViolation,

    #[error("witness {index} has depth {actual}, expected exactly {expected} with the stated coefficient")]
    DepthViolation { index: usize, expected: u32, actual: String },

    #[error("entry ({row}, {col}) has denominator {denominator}, expected at most 2")]
    HalfIntegralityViolation { row: usize, col: usize, denominator: String },

    #[error("graded images fail to span G_{0}")]
    SpanFailure(u32),

    #[error("no integer solution in degree {0}")]
    NoSolution(u32),

    #[error("matrix is not in Gamma: {0}")]
    NotInGamma(String),

    #[error("step {degree} did not raise the residual depth (got {depth})")]
    DepthRegression { degree: u32, depth: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
