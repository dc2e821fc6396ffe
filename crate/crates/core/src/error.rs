use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("non-admissible presentation: {0}")]
    NonAdmissible(String),
    #[error("representation does not satisfy the presentation: {0}")]
    InvalidRepresentation(String),
    #[error("modules live over different presentations")]
    PresentationMismatch,
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("missing idempotent data: {0}")]
    MissingIdempotents(String),
    #[error("input is not of Dynkin type: {0}")]
    NotDynkin(String),
    #[error("summand {0} failed the indecomposability check (End is not local)")]
    NotIndecomposable(String),
    #[error("pair is not a support tau-tilting pair: {0}")]
    UnverifiedPair(String),
    #[error("global dimension exceeds {0}")]
    GlobalDimensionExceeded(usize),
    #[error("bimodule algebras do not match: {0}")]
    AlgebraMismatch(String),
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
