use crate::linalg::SparseVec;
use crate::triple::TripleError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("{what}: vector {witness:?} lies outside the expected subspace")]
    NotContained { what: String, witness: SparseVec },

    #[error("invalid triple: {0}")]
    InvalidTriple(#[from] TripleError),

    #[error("operation requires a commutative triple, but A is not commutative")]
    NonCommutative,

    #[error("degree {requested} exceeds the configured cap {cap}")]
    DegreeCap { requested: usize, cap: usize },

    #[error("chain space of degree {degree} has dimension beyond {limit}")]
    TooLarge { degree: usize, limit: usize },

    #[error("degree 0 has no face maps")]
    NoFaces,

    #[error("face index {face} out of range for degree {degree}")]
    FaceOutOfRange { face: usize, degree: usize },

    #[error("unknown catalog triple `{0}`")]
    UnknownCatalog(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
