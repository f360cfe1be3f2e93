//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("dimension {0} is too small (need at least 2)")]
    DimensionTooSmall(usize),

    #[error("set of states is not orthonormal (tolerance {0:.1e})")]
    NotOrthonormal(f64),

    #[error("basis is not orthonormal and complete for dimension {dim}")]
    InvalidBasis { dim: usize },

    #[error("matrix is not unitary: max |U\u{2020}U - I| = {0:.3e}")]
    NotUnitary(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("ensemble is not of the two-block 2\u{2297}d form: {0}")]
    NotTwoBlock(String),

    #[error("ensemble has {0} states; expected between 1 and {1}")]
    BadEnsembleSize(usize, usize),

    #[error("unsupported dimension {0}: {1}")]
    UnsupportedDimension(usize, &'static str),

    #[error("configuration does not match ensemble: {0}")]
    ConfigMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed ensemble JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
