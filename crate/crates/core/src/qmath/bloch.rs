//! Poincaré-sphere (Bloch) vectors and conversions to and from states.
//!
//! Convention fixed once for the whole crate: |H⟩ sits on the +z pole,
//! |V⟩ on −z, so ρ = (I + n·σ)/2 with n_z = |a_H|² − |a_V|².

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{pauli, CMatrix};
use super::state::PureQubit;
use super::{density::DensityMatrix, ATOL_ALGEBRAIC};
use crate::{Error, Result};

/// Real 3-vector inside the Poincaré unit ball. Pure states sit on the
/// surface; POVM element vectors f_μ and device vectors r, s may be shorter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoincareVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PoincareVector {
    /// Build a vector, requiring finiteness and norm ≤ 1 (within tolerance).
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite { context: "Poincare vector" });
        }
        let v = PoincareVector { x, y, z };
        let norm = v.norm();
        if norm > 1.0 + ATOL_ALGEBRAIC {
            return Err(Error::OutsideUnitBall { norm });
        }
        Ok(v)
    }

    /// Build a vector asserting it is unit within [`ATOL_ALGEBRAIC`].
    pub fn unit(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self::new(x, y, z)?;
        if !v.is_unit() {
            return Err(Error::NotUnitVector { norm: v.norm() });
        }
        Ok(v)
    }

    /// Unit vector from spherical angles θ (from +z) and φ (from +x).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        PoincareVector {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= ATOL_ALGEBRAIC
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// The antipodal vector. Exact: only IEEE sign flips.
    pub fn flipped(&self) -> Self {
        PoincareVector { x: -self.x, y: -self.y, z: -self.z }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl std::ops::Neg for PoincareVector {
    type Output = Self;
    fn neg(self) -> Self {
        self.flipped()
    }
}

/// Bloch vector of a pure state: the unit n with |ψ⟩⟨ψ| = (I + n·σ)/2.
pub fn bloch_from_state(psi: &PureQubit) -> PoincareVector {
    let (ah, av) = (psi.amp_h(), psi.amp_v());
    let cross = ah.conj() * av;
    PoincareVector {
        x: 2.0 * cross.re,
        y: 2.0 * cross.im,
        z: ah.norm_sqr() - av.norm_sqr(),
    }
}

/// Canonical-phase pure state with the given unit Bloch vector.
pub fn state_from_bloch(n: &PoincareVector) -> Result<PureQubit> {
    if !n.is_unit() {
        return Err(Error::NotUnitVector { norm: n.norm() });
    }
    let theta = n.z.clamp(-1.0, 1.0).acos();
    let phi = n.y.atan2(n.x);
    Ok(PureQubit::from_angles(theta, phi).canonical())
}

/// Density matrix (I + n·σ)/2; valid for any n in the unit ball.
pub fn density_from_bloch(n: &PoincareVector) -> DensityMatrix<2> {
    let m = (CMatrix::<2>::identity() + pauli::dot(n.components())).scale(Complex64::new(0.5, 0.0));
    DensityMatrix::new_unchecked(m)
}

/// Bloch vector of a 2×2 density matrix, n_i = Re tr(ρ σ_i).
pub fn bloch_from_density(rho: &DensityMatrix<2>) -> PoincareVector {
    let m = rho.matrix();
    let comp = |axis: usize| (pauli::sigma(axis) * *m).trace().re;
    PoincareVector { x: comp(0), y: comp(1), z: comp(2) }
}
