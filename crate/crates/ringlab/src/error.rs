use thiserror::Error;

/// Errors surfaced by ring construction, arithmetic, and the decision procedures.
#[derive(Debug, Error)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("requested ring of order {required} exceeds cap {allowed}")]
    CapExceeded { required: u64, allowed: u64 },

    #[error("{expr}: requested ring of order {required} exceeds cap {allowed}")]
    CapExceededAt {
        expr: String,
        required: u64,
        allowed: u64,
    },

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("element index {index} out of range for ring of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },

    #[error("not a two-sided ideal: {0}")]
    InvalidIdeal(String),

    #[error("element is not idempotent")]
    NotIdempotent,

    #[error("certificate failed validation: {0}")]
    InvalidCertificate(String),

    #[error("element is not a unit")]
    NotAUnit,

    #[error("ring axiom violated ({law}): {witness}")]
    AxiomViolation { law: String, witness: String },

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("integer overflow in matrix arithmetic")]
    ArithmeticOverflow,

    #[error("parse error at byte {offset}: expected {expected}, found {found}")]
    Parse {
        offset: usize,
        expected: String,
        found: String,
    },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("io error")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RingError>;
