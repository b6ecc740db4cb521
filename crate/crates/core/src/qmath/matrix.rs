//! Dense complex matrices of fixed dimension 2 and 4.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// A single complex amplitude (β of a polarization superposition, a matrix
/// entry, an overlap). Finiteness is enforced by the domain types that
/// aggregate amplitudes, not per arithmetic operation.
pub type Amplitude = Complex64;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense N×N complex matrix in row-major order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMatrix<const N: usize>(pub [[Complex64; N]; N]);

impl<const N: usize> CMatrix<N> {
    pub fn zero() -> Self {
        CMatrix([[C_ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = C_ONE;
        }
        m
    }

    /// Build from real entries.
    pub fn from_real(entries: [[f64; N]; N]) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = Complex64::new(entries[i][j], 0.0);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conjugate(&self) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e = e.conj();
            }
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conjugate()
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for e in row.iter_mut() {
                *e *= c;
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Complex64; N]) -> [Complex64; N] {
        let mut out = [C_ZERO; N];
        for i in 0..N {
            let mut acc = C_ZERO;
            for j in 0..N {
                acc += self.0[i][j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest deviation from Hermiticity, max |M_ij - conj(M_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|e| e.re.is_finite() && e.im.is_finite())
    }

    /// Eigenvalues of a Hermitian matrix, sorted ascending.
    ///
    /// The caller is responsible for Hermiticity; only the self-adjoint
    /// part contributes to the result.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = nalgebra::DMatrix::from_fn(N, N, |i, j| self.0[i][j]);
        let mut eigs: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eigs.sort_by(|a, b| a.total_cmp(b));
        eigs
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Neg for CMatrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for j in 0..N {
                let mut acc = C_ZERO;
                for k in 0..N {
                    acc += self.0[i][k] * rhs.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }
}

/// Kronecker product in (HH, HV, VH, VV) ordering: the first factor is the
/// slow index.
pub fn kron(a: &CMatrix<2>, b: &CMatrix<2>) -> CMatrix<4> {
    let mut m = CMatrix::<4>::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Pauli matrices in the (H, V) basis with |H⟩ on the +z pole.
pub mod pauli {
    use super::CMatrix;
    use num_complex::Complex64;

    const Z: Complex64 = Complex64::new(0.0, 0.0);
    const ONE: Complex64 = Complex64::new(1.0, 0.0);
    const NEG_ONE: Complex64 = Complex64::new(-1.0, 0.0);
    const I: Complex64 = Complex64::new(0.0, 1.0);
    const NEG_I: Complex64 = Complex64::new(0.0, -1.0);

    pub const ID: CMatrix<2> = CMatrix([[ONE, Z], [Z, ONE]]);
    pub const X: CMatrix<2> = CMatrix([[Z, ONE], [ONE, Z]]);
    pub const Y: CMatrix<2> = CMatrix([[Z, NEG_I], [I, Z]]);
    pub const Z_: CMatrix<2> = CMatrix([[ONE, Z], [Z, NEG_ONE]]);

    /// σ_x, σ_y, σ_z indexed 0..3.
    pub fn sigma(axis: usize) -> CMatrix<2> {
        match axis {
            0 => X,
            1 => Y,
            2 => Z_,
            _ => panic!("Pauli axis index must be 0, 1 or 2"),
        }
    }

    /// n·σ for a real 3-vector n.
    pub fn dot(n: [f64; 3]) -> CMatrix<2> {
        let mut m = CMatrix::<2>::zero();
        for (axis, &c) in n.iter().enumerate() {
            m = m + sigma(axis).scale(Complex64::new(c, 0.0));
        }
        m
    }
}
