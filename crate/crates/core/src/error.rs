use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M^dagger| = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("trace is {trace} (expected 1 within 1e-10)")]
    BadTrace { trace: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("state vector is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("bad dimension: expected {expected}, found {found}")]
    BadDimension { expected: String, found: usize },

    #[error(
        "Jacobi eigensolver did not converge: off-diagonal norm {off_norm:e} after {sweeps} sweeps"
    )]
    NoConvergence { off_norm: f64, sweeps: usize },

    #[error("{name} = {value} is out of range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not X-shaped: entry ({row}, {col}) has magnitude {magnitude:e}")]
    NotXShape {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("spectral remix disagrees with direct channel by {defect:e}")]
    RemixMismatch { defect: f64 },

    #[error("cannot parse density matrix: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dim(expected: impl Into<String>, found: usize) -> Self {
        Error::BadDimension {
            expected: expected.into(),
            found,
        }
    }
}
