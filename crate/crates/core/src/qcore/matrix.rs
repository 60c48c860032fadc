use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use super::state::StateVector4;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 4×4 complex matrix in the two-qubit product basis.
///
/// Rows and columns are indexed `|00⟩, |01⟩, |10⟩, |11⟩`, i.e. index
/// `2·m + μ` where `m` labels the first qubit and `μ` the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4 {
    entries: [[Complex64; 4]; 4],
}

impl Default for ComplexMatrix4 {
    fn default() -> Self {
        Self::zeros()
    }
}

impl ComplexMatrix4 {
    pub const fn from_rows(entries: [[Complex64; 4]; 4]) -> Self {
        Self { entries }
    }

    pub fn from_real_rows(rows: [[f64; 4]; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.entries[i][j] = Complex64::new(x, 0.0);
            }
        }
        m
    }

    pub const fn zeros() -> Self {
        Self {
            entries: [[ZERO; 4]; 4],
        }
    }

    pub fn identity() -> Self {
        Self::from_diagonal([1.0; 4])
    }

    pub fn from_diagonal(diag: [f64; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i][i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &StateVector4, v: &StateVector4) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    /// `|v⟩⟨v|`.
    pub fn projector(v: &StateVector4) -> Self {
        Self::outer(v, v)
    }

    /// `Σᵢ wᵢ |vᵢ⟩⟨vᵢ|`.
    pub fn spectral_sum(weights: &[f64], vectors: &[StateVector4]) -> Self {
        weights
            .iter()
            .zip(vectors)
            .fold(Self::zeros(), |acc, (&w, v)| {
                acc + Self::projector(v).scale(w)
            })
    }

    /// Kronecker product `a ⊗ b` of two single-qubit operators.
    #[allow(clippy::needless_range_loop)]
    pub fn kron(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.entries[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        m
    }

    pub fn rows(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate in the product basis.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.entries[i][j] = self.entries[j][i];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5)
    }

    /// Largest entrywise modulus, `‖M‖∞` in the max-entry sense.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `max |M − M†|` entrywise.
    pub fn hermiticity_error(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `⟨u|M|v⟩`.
    pub fn sandwich(&self, u: &StateVector4, v: &StateVector4) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..4 {
            let mut row = ZERO;
            for j in 0..4 {
                row += self.entries[i][j] * v[j];
            }
            acc += u[i].conj() * row;
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Hilbert–Schmidt inner product `Tr(A† B)`.
    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                acc += self.entries[i][j].conj() * other.entries[i][j];
            }
        }
        acc
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i][j]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.entries[i][j] += rhs.entries[i][j];
            }
        }
        self
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.entries[i][j] -= rhs.entries[i][j];
            }
        }
        self
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.entries[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..4 {
                    m.entries[i][j] += a * rhs.entries[k][j];
                }
            }
        }
        m
    }
}

impl Mul<&StateVector4> for &ComplexMatrix4 {
    type Output = [Complex64; 4];

    fn mul(self, v: &StateVector4) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                *o += self.entries[i][j] * v[j];
            }
        }
        out
    }
}
