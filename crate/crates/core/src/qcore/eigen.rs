use num_complex::Complex64;

use super::matrix::{ComplexMatrix4, ZERO};
use super::state::StateVector4;
use crate::error::{Error, Result};

/// Input Hermiticity tolerance accepted by [`eigh`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Spectral decomposition of a Hermitian 4×4 matrix.
///
/// Eigenvalues are sorted in descending order; `eigenvectors[i]` belongs to
/// `eigenvalues[i]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub eigenvalues: [f64; 4],
    pub eigenvectors: [StateVector4; 4],
}

impl EigenSystem {
    /// `Σᵢ f(λᵢ) |vᵢ⟩⟨vᵢ|`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let weights = self.eigenvalues.map(f);
        ComplexMatrix4::spectral_sum(&weights, &self.eigenvectors)
    }

    pub fn reconstruct(&self) -> ComplexMatrix4 {
        self.reconstruct_with(|x| x)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[3]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

fn off_diagonal_norm(a: &ComplexMatrix4) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies a
/// real Givens rotation to the resulting real symmetric 2×2 block.
pub fn eigh(m: &ComplexMatrix4) -> Result<EigenSystem> {
    let herm_err = m.hermiticity_error();
    if !(herm_err <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian(herm_err));
    }
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix4::identity();
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm().max(1.0);

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 {
                    continue;
                }
                let phase = apq / b;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let mut u = ComplexMatrix4::identity();
                u[(p, p)] = Complex64::new(c, 0.0);
                u[(p, q)] = Complex64::new(s, 0.0);
                u[(q, p)] = -phase.conj() * s;
                u[(q, q)] = phase.conj() * c;

                a = u.adjoint() * a * u;
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                for i in 0..4 {
                    a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
                }
                v = v * u;
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence(format!(
            "Jacobi eigensolver: off-diagonal norm {:e} after {MAX_SWEEPS} sweeps",
            off_diagonal_norm(&a)
        )));
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.map(|k| a[(k, k)].re);
    let mut eigenvectors = [StateVector4::basis(0); 4];
    for (slot, &k) in order.iter().enumerate() {
        let column = [v[(0, k)], v[(1, k)], v[(2, k)], v[(3, k)]];
        eigenvectors[slot] = StateVector4::normalized(column)?;
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, descending.
pub fn eigvalsh(m: &ComplexMatrix4) -> Result<[f64; 4]> {
    eigh(m).map(|e| e.eigenvalues)
}

/// Eigenvalues in `[-PSD_TOL, 0)` are treated as zero.
pub const PSD_TOL: f64 = 1e-10;

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn psd_sqrt_matrix(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let es = eigh(m)?;
    let min = es.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::NotPsd(min));
    }
    Ok(es.reconstruct_with(|x| x.max(0.0).sqrt()))
}
