use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector does not span a line")]
    ZeroVector,
    #[error("zero matrix has no nonzero row space")]
    ZeroMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("vector is isotropic (Q(v) = 0)")]
    IsotropicVector,
    #[error("quadratic form is degenerate")]
    DegenerateForm,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("wrong graph kind: {0}")]
    WrongGraphKind(&'static str),
    #[error("clique search exceeded its node budget of {0}")]
    BudgetExceeded(u64),
    #[error("vertex count {count} exceeds the eigensolver cap {cap}")]
    EigenCapExceeded { count: usize, cap: usize },
    #[error("irregular or degree zero")]
    IrregularOrDegreeZero,
    #[error("vertex-set mismatch")]
    VertexSetMismatch,
    #[error("generator does not preserve the Gram matrix")]
    NotAnIsometry,
    #[error("cache error: {0}")]
    Cache(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
