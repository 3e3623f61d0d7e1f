use thiserror::Error;

/// Errors raised by state construction, validation and the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected side {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |A - A^H| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("trace differs from one by {defect:e}")]
    NotUnitTrace { defect: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Hermitian eigensolver did not converge on a {side}x{side} matrix")]
    EigensolverFailure { side: usize },

    #[error("measurement basis is not orthonormal (Gram defect {defect:e})")]
    NonOrthonormalBasis { defect: f64 },

    #[error("spectrum does not sum to one (sum = {sum})")]
    TraceNotOne { sum: f64 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("{family}: parameter out of range: {constraint}")]
    ParameterOutOfRange { family: String, constraint: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn out_of_range(family: &str, constraint: impl Into<String>) -> Self {
        Error::ParameterOutOfRange {
            family: family.to_string(),
            constraint: constraint.into(),
        }
    }

    /// True for errors caused by user-supplied data rather than numerical failure.
    pub fn is_invalid_input(&self) -> bool {
        !matches!(self, Error::EigensolverFailure { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
