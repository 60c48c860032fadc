use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Index;

use num_complex::Complex64;

use super::matrix::{ONE, ZERO};
use crate::error::{Error, Result};

/// Tolerance on `|‖v‖² − 1|` for a state vector.
pub const NORM_TOL: f64 = 1e-12;

/// Normalized pure state of two qubits, amplitudes on `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector4 {
    amplitudes: [Complex64; 4],
}

impl StateVector4 {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        let n2 = norm_sqr(&amplitudes);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amplitudes })
    }

    pub fn from_real(amplitudes: [f64; 4]) -> Result<Self> {
        Self::new(amplitudes.map(|x| Complex64::new(x, 0.0)))
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: [Complex64; 4]) -> Result<Self> {
        let n2 = norm_sqr(&amplitudes);
        if n2 <= f64::MIN_POSITIVE {
            return Err(Error::NotNormalized(n2));
        }
        let inv = 1.0 / n2.sqrt();
        Ok(Self {
            amplitudes: amplitudes.map(|z| z * inv),
        })
    }

    /// Product-basis ket `|index⟩`, with `index = 2·m + μ`.
    pub fn basis(index: usize) -> Self {
        let mut amplitudes = [ZERO; 4];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }
}

impl Index<usize> for StateVector4 {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.amplitudes[i]
    }
}

fn norm_sqr(a: &[Complex64; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

fn real_unit(a: [f64; 4]) -> StateVector4 {
    StateVector4 {
        amplitudes: a.map(|x| Complex64::new(x, 0.0)),
    }
}

const H: f64 = FRAC_1_SQRT_2;

/// `|Φ⁺⟩ = (|11⟩ + |00⟩)/√2`.
pub fn phi_plus() -> StateVector4 {
    real_unit([H, 0.0, 0.0, H])
}

/// `|Φ⁻⟩ = (|11⟩ − |00⟩)/√2`.
pub fn phi_minus() -> StateVector4 {
    real_unit([-H, 0.0, 0.0, H])
}

/// `|Ψ⁺⟩ = (|10⟩ + |01⟩)/√2`.
pub fn psi_plus() -> StateVector4 {
    real_unit([0.0, H, H, 0.0])
}

/// `|Ψ⁻⟩ = (|10⟩ − |01⟩)/√2`.
pub fn psi_minus() -> StateVector4 {
    real_unit([0.0, -H, H, 0.0])
}

/// The Bell basis in the fixed order `(|Φ⁻⟩, |Φ⁺⟩, |Ψ⁻⟩, |Ψ⁺⟩)`.
pub fn bell_basis() -> [StateVector4; 4] {
    [phi_minus(), phi_plus(), psi_minus(), psi_plus()]
}

/// Largest deviation of the Gram matrix of `vectors` from the identity.
pub fn orthonormality_error(vectors: &[StateVector4]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((u.inner(v) - target).norm());
        }
    }
    worst
}
