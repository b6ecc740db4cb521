//! Why Bob cannot fix the bad RSP branch himself: universally complementing
//! a qubit (n → −n everywhere on the sphere) is anti-unitary.
//!
//! The ideal complementing map Λ(ρ) = I·tr(ρ) − ρ sends every valid state to
//! a valid state, yet it is not completely positive: its Choi matrix has a
//! negative eigenvalue, so no physical device implements it. A plain NOT
//! gate taking |H⟩ ↔ |V⟩ exists — the obstruction is universality.

use num_complex::Complex64;

use crate::qmath::matrix::{kron, CMatrix, C_ONE, C_ZERO};
use crate::qmath::{DensityMatrix, ATOL_ALGEBRAIC};
use crate::{Error, Result};

/// Λ on an arbitrary 2×2 operator: I·tr(M) − M (linear extension of the
/// complementing map; needed entrywise to assemble the Choi matrix).
pub fn complement_map(m: &CMatrix<2>) -> CMatrix<2> {
    CMatrix::<2>::identity().scale(m.trace()) - *m
}

/// Λ on a state: Bloch inversion n → −n. Always a valid state again —
/// positivity on products does not imply complete positivity.
pub fn complement_state(rho: &DensityMatrix<2>) -> DensityMatrix<2> {
    DensityMatrix::new(complement_map(rho.matrix())).expect("Bloch inversion preserves validity")
}

/// Choi matrix of a qubit map: C = Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|), unnormalized.
/// Hermitian for any Hermiticity-preserving map; positive semidefinite iff
/// the map is completely positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChoiMatrix(CMatrix<4>);

impl ChoiMatrix {
    pub fn new(m: CMatrix<4>) -> Result<Self> {
        let dev = m.hermiticity_deviation();
        if dev > ATOL_ALGEBRAIC {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(ChoiMatrix(m))
    }

    /// Assemble the Choi matrix of a map given entrywise on |i⟩⟨j|.
    pub fn of_map(map: impl Fn(&CMatrix<2>) -> CMatrix<2>) -> Result<Self> {
        let mut total = CMatrix::<4>::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut unit = CMatrix::<2>::zero();
                unit.0[i][j] = C_ONE;
                let mut marker = CMatrix::<2>::zero();
                marker.0[i][j] = C_ONE;
                total = total + kron(&marker, &map(&unit));
            }
        }
        ChoiMatrix::new(total)
    }

    pub fn matrix(&self) -> &CMatrix<4> {
        &self.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.hermitian_eigenvalues()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }
}

/// The Choi matrix of the universal complementing map and its minimum
/// eigenvalue. The eigenvalue is −1: strictly negative, certifying that the
/// map is not completely positive and hence not a physical operation.
pub fn universal_not_choi() -> (ChoiMatrix, f64) {
    let choi = ChoiMatrix::of_map(complement_map).expect("the complementing map is Hermiticity-preserving");
    let min = choi.min_eigenvalue();
    (choi, min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{bloch_from_density, density_from_bloch, PoincareVector, PureQubit, Seed};
    use rand::Rng;

    #[test]
    fn basis_states_are_complemented_exactly() {
        // the non-universal NOT exists: |H⟩⟨H| → |V⟩⟨V|
        let out = complement_state(&DensityMatrix::from_pure(&PureQubit::h()));
        let expected = DensityMatrix::from_pure(&PureQubit::v());
        assert!(out.matrix().max_abs_diff(expected.matrix()) < 1e-15);
    }

    #[test]
    fn complement_inverts_the_bloch_vector_and_stays_physical() {
        let mut rng = Seed(501).rng();
        for _ in 0..100 {
            let n = PoincareVector::from_angles(
                rng.random::<f64>() * std::f64::consts::PI,
                rng.random::<f64>() * std::f64::consts::TAU,
            );
            let flipped = complement_state(&density_from_bloch(&n));
            let out = bloch_from_density(&flipped);
            assert!((out.x + n.x).abs() < 1e-12);
            assert!((out.y + n.y).abs() < 1e-12);
            assert!((out.z + n.z).abs() < 1e-12);
            // validity re-checked from scratch
            assert!(DensityMatrix::new(*flipped.matrix()).is_ok());
        }
    }

    #[test]
    fn choi_matrix_has_the_expected_entries() {
        let (choi, _) = universal_not_choi();
        let m = choi.matrix();
        // Λ(|0⟩⟨0|) = |1⟩⟨1| ⟹ entry (01, 01); Λ(|0⟩⟨1|) = −|0⟩⟨1| ⟹ (00, 11)
        let mut expected = CMatrix::<4>::zero();
        expected.0[1][1] = C_ONE;
        expected.0[2][2] = C_ONE;
        expected.0[0][3] = -C_ONE;
        expected.0[3][0] = -C_ONE;
        assert!(m.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn choi_spectrum_is_three_ones_and_a_minus_one() {
        let (choi, min) = universal_not_choi();
        let eigs = choi.eigenvalues();
        let expected = [-1.0, 1.0, 1.0, 1.0];
        for (e, x) in eigs.iter().zip(expected.iter()) {
            assert!((e - x).abs() < 1e-12, "eigenvalue {e} vs expected {x}");
        }
        assert!((min + 1.0).abs() < 1e-12);
        assert!(min < 0.0);

        // independent oracle: known eigenvectors of the assembled matrix.
        // |01⟩ and |10⟩ at +1; (|00⟩ ∓ |11⟩)/√2 at ±1.
        let m = choi.matrix();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let vectors: [([Complex64; 4], f64); 4] = [
            ([C_ZERO, C_ONE, C_ZERO, C_ZERO], 1.0),
            ([C_ZERO, C_ZERO, C_ONE, C_ZERO], 1.0),
            (
                [Complex64::new(r, 0.0), C_ZERO, C_ZERO, Complex64::new(-r, 0.0)],
                1.0,
            ),
            (
                [Complex64::new(r, 0.0), C_ZERO, C_ZERO, Complex64::new(r, 0.0)],
                -1.0,
            ),
        ];
        for (v, lambda) in vectors {
            let out = m.mul_vec(&v);
            for k in 0..4 {
                assert!((out[k] - v[k] * lambda).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn choi_of_a_unitary_map_is_positive() {
        // sanity: a physical map must pass the same test the NOT gate fails
        let u = crate::qmath::Unitary2::sigma_x();
        let choi = ChoiMatrix::of_map(|m| u.conjugate_matrix(m)).unwrap();
        assert!(choi.min_eigenvalue() > -1e-12);
    }
}
