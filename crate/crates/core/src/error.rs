use thiserror::Error;

/// Errors raised by the linear algebra, inference and scheme constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("vector is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("eigenvectors are not orthonormal (max overlap error {0:e})")]
    NotOrthonormal(f64),

    #[error("expectation value has imaginary part {0:e}")]
    NonRealExpectation(f64),

    #[error("mean {mean} outside the attainable range [{min}, {max}]")]
    MeanOutOfRange { mean: f64, min: f64, max: f64 },

    #[error("second moment {sigma2} infeasible for mean {mean} (attainable [{min}, {max}])")]
    Infeasible {
        mean: f64,
        sigma2: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("spectrum is degenerate: {0}")]
    DegenerateSpectrum(String),

    #[error("solver did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
