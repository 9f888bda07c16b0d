use thiserror::Error;

/// Errors shared across the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("pair joins two variables of equal variance")]
    VarianceClash,
    #[error("pairing incomplete or doubled: {0}")]
    Incomplete(String),
    #[error("composition would create a closed loop")]
    ClosedLoop,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not in the tree shape family: {0}")]
    WrongShapeFamily(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("label endpoints do not match: {0}")]
    TypeMismatch(String),
    #[error("functor undefined on label: {0}")]
    UndefinedLabel(String),
    #[error("configuration is not tree shaped: {0}")]
    NotTreeShaped(String),
    #[error("composite disagrees with the stated output: {0}")]
    CompositeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("correspondence mismatch: {0}")]
    MismatchFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
