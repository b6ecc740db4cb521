//! Validated 2×2 unitaries and the polarization-rotation family U(α, β).

use num_complex::Complex64;
use rand::Rng;

use super::matrix::{CMatrix, C_ZERO};
use super::state::PureQubit;
use super::ATOL_ALGEBRAIC;
use crate::{Error, Result};

/// A 2×2 unitary, U†U = I within [`ATOL_ALGEBRAIC`] entrywise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(CMatrix<2>);

impl Unitary2 {
    pub fn new(m: CMatrix<2>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite { context: "unitary entries" });
        }
        let dev = (m.adjoint() * m).max_abs_diff(&CMatrix::identity());
        if dev > ATOL_ALGEBRAIC {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(Unitary2(m))
    }

    /// The rotation taking the computational basis to the qubit basis:
    /// U|H⟩ = α|H⟩ + β|V⟩ and U|V⟩ = α|V⟩ − β*|H⟩, with α real.
    ///
    /// Fails unless α² + |β|² = 1 within [`ATOL_ALGEBRAIC`].
    pub fn su2(alpha: f64, beta: Complex64) -> Result<Self> {
        let norm_sq = alpha * alpha + beta.norm_sqr();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite { context: "su2 coefficients" });
        }
        if (norm_sq - 1.0).abs() > ATOL_ALGEBRAIC {
            return Err(Error::NotNormalized { norm_sq });
        }
        let a = Complex64::new(alpha, 0.0);
        Ok(Unitary2(CMatrix([[a, -beta.conj()], [beta, a]])))
    }

    pub fn identity() -> Self {
        Unitary2(CMatrix::identity())
    }

    pub fn sigma_x() -> Self {
        Unitary2(super::matrix::pauli::X)
    }

    pub fn sigma_z() -> Self {
        Unitary2(super::matrix::pauli::Z_)
    }

    /// iσ_y = [[0, 1], [−1, 0]]; maps the orthogonal polar-circle state back
    /// to the target.
    pub fn i_sigma_y() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Unitary2(CMatrix([[C_ZERO, one], [-one, C_ZERO]]))
    }

    /// Haar-style random SU(2) element: a unit quaternion mapped to
    /// [[a, −b*], [b, a*]].
    pub fn random_su2(rng: &mut impl Rng) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0);
            let norm = q.iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm < 1e-3 {
                continue;
            }
            let a = Complex64::new(q[0] / norm, q[1] / norm);
            let b = Complex64::new(q[2] / norm, q[3] / norm);
            return Unitary2(CMatrix([[a, -b.conj()], [b, a.conj()]]));
        }
    }

    pub fn matrix(&self) -> &CMatrix<2> {
        &self.0
    }

    pub fn dagger(&self) -> Self {
        Unitary2(self.0.adjoint())
    }

    pub fn det(&self) -> Complex64 {
        self.0 .0[0][0] * self.0 .0[1][1] - self.0 .0[0][1] * self.0 .0[1][0]
    }

    /// U|ψ⟩, renormalized to absorb rounding drift.
    pub fn apply(&self, psi: &PureQubit) -> PureQubit {
        let [h, v] = psi.amplitudes();
        let out_h = self.0 .0[0][0] * h + self.0 .0[0][1] * v;
        let out_v = self.0 .0[1][0] * h + self.0 .0[1][1] * v;
        PureQubit::renormalized(out_h, out_v)
    }

    /// ρ ↦ UρU† as a raw matrix operation.
    pub fn conjugate_matrix(&self, m: &CMatrix<2>) -> CMatrix<2> {
        self.0 * *m * self.0.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::rng::Seed;
    use crate::qmath::state::fidelity;

    #[test]
    fn su2_identity_case() {
        let u = Unitary2::su2(1.0, C_ZERO).unwrap();
        assert!(u.matrix().max_abs_diff(&CMatrix::identity()) < 1e-15);
    }

    #[test]
    fn su2_hadamard_like_case() {
        // (1/√2, 1/√2) → [[1, −1], [1, 1]]/√2, taking |H⟩ to (|H⟩+|V⟩)/√2
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let u = Unitary2::su2(r, Complex64::new(r, 0.0)).unwrap();
        let expected = CMatrix::from_real([[r, -r], [r, r]]);
        assert!(u.matrix().max_abs_diff(&expected) < 1e-15);
        let plus = u.apply(&PureQubit::h());
        let target = PureQubit::new(Complex64::new(r, 0.0), Complex64::new(r, 0.0)).unwrap();
        assert!((fidelity(&plus, &target) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn su2_pure_flip_case() {
        // (0, 1) → [[0, −1], [1, 0]]; unitarity checked by explicit product.
        let u = Unitary2::su2(0.0, Complex64::new(1.0, 0.0)).unwrap();
        let expected = CMatrix::from_real([[0.0, -1.0], [1.0, 0.0]]);
        assert!(u.matrix().max_abs_diff(&expected) < 1e-15);
        // hand-expanded U†U oracle
        let m = u.matrix().0;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += m[k][i].conj() * m[k][j];
                }
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((acc - Complex64::new(expected, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn su2_rejects_unnormalized_coefficients() {
        assert!(matches!(
            Unitary2::su2(0.9, Complex64::new(0.9, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn su2_action_matches_both_columns() {
        let mut rng = Seed(31).rng();
        for _ in 0..100 {
            let theta = rng.random::<f64>() * std::f64::consts::PI;
            let phi = rng.random::<f64>() * std::f64::consts::TAU;
            let alpha = theta.cos();
            let beta = Complex64::from_polar(theta.sin(), phi);
            let u = Unitary2::su2(alpha, beta).unwrap();
            let psi = u.apply(&PureQubit::h());
            assert!((psi.amp_h() - Complex64::new(alpha, 0.0)).norm() < 1e-12);
            assert!((psi.amp_v() - beta).norm() < 1e-12);
            let perp = u.apply(&PureQubit::v());
            assert!((perp.amp_h() + beta.conj()).norm() < 1e-12);
            assert!((perp.amp_v() - Complex64::new(alpha, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn su2_is_unitary_with_unit_determinant_for_random_coefficients() {
        let mut rng = Seed(32).rng();
        for _ in 0..1000 {
            let theta = rng.random::<f64>() * std::f64::consts::PI;
            let phi = rng.random::<f64>() * std::f64::consts::TAU;
            let u = Unitary2::su2(theta.cos(), Complex64::from_polar(theta.sin(), phi)).unwrap();
            let dev = (u.matrix().adjoint() * *u.matrix()).max_abs_diff(&CMatrix::identity());
            assert!(dev < 1e-12, "unitarity deviation {dev}");
            assert!((u.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn random_su2_is_unitary_unit_det() {
        let mut rng = Seed(33).rng();
        for _ in 0..1000 {
            let u = Unitary2::random_su2(&mut rng);
            let dev = (u.matrix().adjoint() * *u.matrix()).max_abs_diff(&CMatrix::identity());
            assert!(dev < 1e-12);
            assert!((u.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary_matrix() {
        let m = CMatrix::from_real([[1.0, 0.1], [0.0, 1.0]]);
        assert!(matches!(Unitary2::new(m), Err(Error::NotUnitary { .. })));
    }
}
