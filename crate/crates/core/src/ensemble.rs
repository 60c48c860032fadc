//! Reproducible random matrices for property checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::qcore::{ComplexMatrix4, DensityMatrix, Qubit2};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// 4×4 matrix of independent standard complex Gaussians.
pub fn ginibre<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix4 {
    let mut g = ComplexMatrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            g[(i, j)] = gaussian(rng);
        }
    }
    g
}

/// `G·G†/Tr(G·G†)` with Gaussian `G`; full rank with probability one.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> Result<DensityMatrix> {
    let g = ginibre(rng);
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale(1.0 / tr).hermitian_part())
}

/// `(G + G†)/2` with Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix4 {
    ginibre(rng).hermitian_part()
}

/// Haar-ish random single-qubit unitary `exp(i(t·n̂·σ))` times a global phase.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> Qubit2 {
    let mut n = [0.0f64; 3];
    for x in n.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt().max(1e-300);
    let n = n.map(|x| x / len);
    let t: f64 = rng.random_range(0.0..std::f64::consts::PI);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let (s, c) = t.sin_cos();
    let i = Complex64::i();
    [
        [
            phase * (c + i * s * n[2]),
            phase * (i * s * n[0] + s * n[1]),
        ],
        [
            phase * (i * s * n[0] - s * n[1]),
            phase * (c - i * s * n[2]),
        ],
    ]
}
