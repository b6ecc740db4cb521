//! Density matrices of dimension 2 and 4.

use num_complex::Complex64;

use super::matrix::CMatrix;
use super::state::{PureQubit, TwoQubitState};
use super::{ATOL_ALGEBRAIC, EIGENVALUE_FLOOR};
use crate::{Error, Result};

/// Which photon of a two-photon system to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    /// First photon (Alice's slot).
    A,
    /// Second photon (Bob's slot).
    B,
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// (eigenvalues above [`EIGENVALUE_FLOOR`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<const N: usize>(CMatrix<N>);

impl<const N: usize> DensityMatrix<N> {
    pub fn new(m: CMatrix<N>) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite { context: "density matrix" });
        }
        let herm = m.hermiticity_deviation();
        if herm > ATOL_ALGEBRAIC {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("Hermiticity deviation {herm:.3e}"),
            });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > ATOL_ALGEBRAIC || tr.im.abs() > ATOL_ALGEBRAIC {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {} + {}i is not 1", tr.re, tr.im),
            });
        }
        let min_eig = m.hermitian_eigenvalues()[0];
        if min_eig < EIGENVALUE_FLOOR {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(DensityMatrix(m))
    }

    /// For constructions that are positive by algebra (outer products,
    /// (I + n·σ)/2 with |n| ≤ 1, partial traces of valid states).
    pub(crate) fn new_unchecked(m: CMatrix<N>) -> Self {
        DensityMatrix(m)
    }

    pub fn matrix(&self) -> &CMatrix<N> {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Re tr(E ρ): outcome probability of the effect E on this state.
    pub fn expectation(&self, effect: &CMatrix<N>) -> f64 {
        (*effect * self.0).trace().re
    }

    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        self.0.hermitian_eigenvalues()
    }
}

impl DensityMatrix<2> {
    /// |ψ⟩⟨ψ| of a pure polarization state.
    pub fn from_pure(psi: &PureQubit) -> Self {
        let [ah, av] = psi.amplitudes();
        DensityMatrix(CMatrix([
            [ah * ah.conj(), ah * av.conj()],
            [av * ah.conj(), av * av.conj()],
        ]))
    }

    /// The completely unpolarized state I/2.
    pub fn maximally_mixed() -> Self {
        DensityMatrix(CMatrix::<2>::identity().scale(Complex64::new(0.5, 0.0)))
    }
}

impl DensityMatrix<4> {
    /// |s⟩⟨s| of a two-photon pure state.
    pub fn from_two_qubit(s: &TwoQubitState) -> Self {
        DensityMatrix(s.outer())
    }

    /// Reduce to one photon by tracing out the other.
    pub fn partial_trace(&self, keep: Subsystem) -> DensityMatrix<2> {
        let m = &self.0;
        let mut out = CMatrix::<2>::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += match keep {
                        // keep A: sum over Bob's index (fast index)
                        Subsystem::A => m.0[2 * i + k][2 * j + k],
                        // keep B: sum over Alice's index (slow index)
                        Subsystem::B => m.0[2 * k + i][2 * k + j],
                    };
                }
                out.0[i][j] = acc;
            }
        }
        DensityMatrix::new_unchecked(out)
    }
}

/// ρ_A ⊗ ρ_B of two single-photon states.
pub fn tensor_density(a: &DensityMatrix<2>, b: &DensityMatrix<2>) -> DensityMatrix<4> {
    DensityMatrix::new_unchecked(super::matrix::kron(a.matrix(), b.matrix()))
}
