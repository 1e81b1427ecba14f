use crate::algebra::ValidationReport;
use crate::linalg::LinalgError;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("structure constants violate the algebra axioms: {0}")]
    InvalidAlgebra(ValidationReport),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("not a complete set of orthogonal idempotents: {0}")]
    IdempotentSystem(String),
    #[error("elements belong to different algebras")]
    ParentMismatch,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("subspace is not a unital subalgebra for the given unit")]
    NotASubalgebra,
    #[error("algebra is not commutative")]
    NotCommutative,
    #[error("change of basis matrix is singular")]
    SingularBasisChange,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("module is not a generator")]
    NotAGenerator,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap { what: String, needed: usize, cap: usize },
    #[error("{0}")]
    Usage(String),
    #[error("{location}: {message}")]
    Spec { location: String, message: String },
}

impl Error {
    /// Process exit status for this error: 3 for resource caps, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
