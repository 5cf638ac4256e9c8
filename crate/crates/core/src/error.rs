use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuditError {
    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("register mismatch: expected dims {expected:?}, found {found:?}")]
    RegisterMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("dimension {dim} exceeds the dense-matrix limit of {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },

    #[error("state space of {dim} amplitudes exceeds the limit of {limit}")]
    StateTooLarge { dim: usize, limit: usize },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {count} qubits")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, QuditError>;
