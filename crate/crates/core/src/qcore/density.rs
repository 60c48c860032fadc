use std::fmt;

use super::eigen::{eigh, psd_sqrt_matrix, EigenSystem, PSD_TOL};
use super::matrix::ComplexMatrix4;
use super::state::StateVector4;
use crate::error::{Error, Result};

pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues below this contribute nothing to the entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-14;
pub const IMAG_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite state of two qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix4,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix4) -> Result<Self> {
        let herm = matrix.hermiticity_error();
        if !(herm <= DENSITY_HERMITIAN_TOL) {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min = eigh(&matrix)?.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { matrix })
    }

    /// `Σᵢ wᵢ |vᵢ⟩⟨vᵢ|` for a probability vector `w` and orthonormal `vᵢ`.
    pub fn from_spectrum(weights: &[f64], vectors: &[StateVector4]) -> Result<Self> {
        Self::new(ComplexMatrix4::spectral_sum(weights, vectors))
    }

    pub fn pure(v: &StateVector4) -> Self {
        Self {
            matrix: ComplexMatrix4::projector(v),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            matrix: ComplexMatrix4::from_diagonal([0.25; 4]),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    pub fn eigen(&self) -> Result<EigenSystem> {
        eigh(&self.matrix)
    }

    /// Descending spectrum.
    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        Ok(self.eigen()?.eigenvalues)
    }

    /// `⟨v|ρ|v⟩`.
    pub fn population(&self, v: &StateVector4) -> f64 {
        self.matrix.sandwich(v, v).re
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix4) -> Result<Self> {
        Self::new((*u * self.matrix * u.adjoint()).hermitian_part())
    }
}

impl fmt::Display for DensityMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.matrix.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// Principal square root of a density matrix.
pub fn psd_sqrt(rho: &DensityMatrix) -> Result<ComplexMatrix4> {
    psd_sqrt_matrix(rho.matrix())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    /// Nats.
    Natural,
    /// Bits.
    Two,
}

/// Von Neumann entropy `−Tr ρ log ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix, base: LogBase) -> Result<f64> {
    Ok(entropy_of_spectrum(&rho.eigenvalues()?, base))
}

/// Shannon entropy of a spectrum; entries below [`ENTROPY_CUTOFF`] are dropped.
pub fn entropy_of_spectrum(p: &[f64], base: LogBase) -> f64 {
    let nats: f64 = p
        .iter()
        .filter(|&&x| x > ENTROPY_CUTOFF)
        .map(|&x| -x * x.ln())
        .sum();
    let s = match base {
        LogBase::Natural => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    };
    s.max(0.0)
}

/// `Tr(ρ·M)` for Hermitian `M`.
pub fn expectation(rho: &DensityMatrix, m: &ComplexMatrix4) -> Result<f64> {
    let t = (*rho.matrix() * *m).trace();
    if t.im.abs() > IMAG_TOL {
        return Err(Error::NonRealExpectation(t.im));
    }
    Ok(t.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::state::phi_plus;
    use num_complex::Complex64;

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(ComplexMatrix4::identity()).is_err());
        assert!(matches!(
            DensityMatrix::new(ComplexMatrix4::from_diagonal([1.2, -0.2, 0.0, 0.0])),
            Err(Error::NotPsd(_))
        ));
        let mut m = ComplexMatrix4::from_diagonal([0.5, 0.5, 0.0, 0.0]);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn entropies() {
        let mixed = DensityMatrix::maximally_mixed();
        let s = von_neumann_entropy(&mixed, LogBase::Natural).unwrap();
        assert!((s - 4f64.ln()).abs() < 1e-14);
        let pure = DensityMatrix::pure(&phi_plus());
        assert!(von_neumann_entropy(&pure, LogBase::Natural).unwrap().abs() < 1e-12);
        let half = DensityMatrix::new(ComplexMatrix4::from_diagonal([0.5, 0.5, 0.0, 0.0])).unwrap();
        assert!((von_neumann_entropy(&half, LogBase::Two).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sqrt_of_states() {
        let r = psd_sqrt(&DensityMatrix::maximally_mixed()).unwrap();
        assert!(r.max_abs_diff(&ComplexMatrix4::identity().scale(0.5)) < 1e-15);
        let pure = DensityMatrix::pure(&phi_plus());
        let r = psd_sqrt(&pure).unwrap();
        assert!(r.max_abs_diff(pure.matrix()) < 1e-12);
        assert!((r * r).max_abs_diff(pure.matrix()) < 1e-10);
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let rho = DensityMatrix::pure(&phi_plus());
        let e = expectation(&rho, &ComplexMatrix4::identity()).unwrap();
        assert!((e - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_rejects_imaginary() {
        let mut m = ComplexMatrix4::zeros();
        m[(0, 0)] = Complex64::new(0.0, 1.0);
        let rho = DensityMatrix::maximally_mixed();
        assert!(matches!(
            expectation(&rho, &m),
            Err(Error::NonRealExpectation(_))
        ));
    }
}
