//! Concurrence, entanglement of formation and the partial-transpose test.

use crate::error::{Error, Result};
use crate::qcore::{eigh, eigvalsh, psd_sqrt, ComplexMatrix4, DensityMatrix, SIGMA_Y};

/// A state is separable when its partial transpose has no eigenvalue below
/// `-SEPARABILITY_TOL`.
pub const SEPARABILITY_TOL: f64 = 1e-10;

/// Tolerance on the sum of Bell-diagonal weights and the `1/2` boundary.
pub const BELL_WEIGHT_TOL: f64 = 1e-12;

/// Entanglement summary of a single two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    /// Entanglement of formation in bits.
    pub eof: f64,
    pub min_pt_eigenvalue: f64,
    pub separable: bool,
}

impl EntanglementReport {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        Self::with_tolerance(rho, SEPARABILITY_TOL)
    }

    pub fn with_tolerance(rho: &DensityMatrix, tol: f64) -> Result<Self> {
        let c = concurrence(rho)?;
        let min_pt = min_pt_eigenvalue(rho)?;
        Ok(Self {
            concurrence: c,
            eof: eof_from_concurrence(c),
            min_pt_eigenvalue: min_pt,
            separable: min_pt >= -tol,
        })
    }
}

fn sigma_y_y() -> ComplexMatrix4 {
    ComplexMatrix4::kron(&SIGMA_Y, &SIGMA_Y)
}

/// `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)` with the conjugate taken in the product basis.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix4 {
    let yy = sigma_y_y();
    yy * rho.matrix().conj() * yy
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`.
///
/// The `λᵢ` are taken from the Hermitian matrix `√ρ·ρ̃·√ρ`, which shares its
/// spectrum with `ρ·ρ̃`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let root = psd_sqrt(rho)?;
    let flipped = spin_flip(rho);
    let r = (root * flipped * root).hermitian_part();
    // eigvalsh returns descending eigenvalues, so the roots stay sorted.
    let lambdas = eigvalsh(&r)?.map(|x| x.max(0.0).sqrt());
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// `h((1 + √(1 − C²))/2)`.
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    let x = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    binary_entropy(x).clamp(0.0, 1.0)
}

/// Entanglement of formation in bits.
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<f64> {
    Ok(eof_from_concurrence(concurrence(rho)?))
}

/// Transpose over the first qubit: `ρᴾᵀ[mμ, nν] = ρ[nμ, mν]`.
pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix4 {
    partial_transpose_matrix(rho.matrix())
}

pub fn partial_transpose_matrix(m: &ComplexMatrix4) -> ComplexMatrix4 {
    let mut out = ComplexMatrix4::zeros();
    for first_row in 0..2 {
        for second_row in 0..2 {
            for first_col in 0..2 {
                for second_col in 0..2 {
                    out[(2 * first_row + second_row, 2 * first_col + second_col)] =
                        m[(2 * first_col + second_row, 2 * first_row + second_col)];
                }
            }
        }
    }
    out
}

pub fn min_pt_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    Ok(eigh(&partial_transpose(rho))?.min_eigenvalue())
}

/// Peres–Horodecki test; exact for two qubits.
pub fn is_separable(rho: &DensityMatrix) -> Result<bool> {
    Ok(min_pt_eigenvalue(rho)? >= -SEPARABILITY_TOL)
}

/// A Bell-diagonal state is separable iff no weight exceeds `1/2`.
pub fn bell_diagonal_separable(weights: [f64; 4]) -> Result<bool> {
    if let Some(w) = weights.iter().find(|w| !(**w >= -BELL_WEIGHT_TOL)) {
        return Err(Error::InvalidDistribution(format!("negative weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > BELL_WEIGHT_TOL {
        return Err(Error::InvalidDistribution(format!(
            "weights sum to {total}"
        )));
    }
    Ok(weights.iter().all(|&w| w <= 0.5 + BELL_WEIGHT_TOL))
}
