use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not symmetric (residual {residual:e})")]
    NotSymmetric { residual: f64 },

    #[error("matrix is not a rotation (det {det})")]
    NotRotation { det: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("involution axiom violated (residual {residual})")]
    NotInvolution { residual: String },

    #[error("expected a grade-1 element: {0}")]
    NotVector(String),

    #[error("element has mixed parity")]
    MixedParity,

    #[error("not a Pin^c element: {0}")]
    NotPin(String),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value out of supported range: {0}")]
    OutOfRange(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("ill-defined map: {0}")]
    IllDefined(String),

    #[error("not in the functional-calculus image: {0}")]
    NotFunctionOfGenerator(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
