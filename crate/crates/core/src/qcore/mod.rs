//! Fixed-size complex linear algebra for two-qubit operators.
//!
//! Everything is expressed in the product basis `|00⟩, |01⟩, |10⟩, |11⟩`,
//! first index for the first qubit.

mod density;
mod eigen;
mod matrix;
mod state;

pub use density::{
    entropy_of_spectrum, expectation, psd_sqrt, von_neumann_entropy, DensityMatrix, LogBase,
    DENSITY_HERMITIAN_TOL, ENTROPY_CUTOFF, IMAG_TOL, TRACE_TOL,
};
pub use eigen::{eigh, eigvalsh, psd_sqrt_matrix, EigenSystem, HERMITIAN_TOL, PSD_TOL};
pub use matrix::ComplexMatrix4;
pub use num_complex::Complex64;
pub use state::{
    bell_basis, orthonormality_error, phi_minus, phi_plus, psi_minus, psi_plus, StateVector4,
    NORM_TOL,
};

/// Single-qubit operator as a 2×2 array.
pub type Qubit2 = [[Complex64; 2]; 2];

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const IDENTITY2: Qubit2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
pub const SIGMA_X: Qubit2 = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
pub const SIGMA_Y: Qubit2 = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
pub const SIGMA_Z: Qubit2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
