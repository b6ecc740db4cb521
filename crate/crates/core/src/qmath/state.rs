//! Pure polarization states of one and two photons.

use num_complex::Complex64;

use super::matrix::{CMatrix, C_ZERO};
use super::ATOL_ALGEBRAIC;
use crate::{Error, Result};

/// A normalized single-photon polarization state a_H|H⟩ + a_V|V⟩.
///
/// Global phase is physically meaningless; [`PureQubit::canonical`] fixes it
/// so that a_H is real and non-negative (and a_V real non-negative when
/// a_H = 0). Equality of states should always be judged with [`fidelity`],
/// never componentwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    amp_h: Complex64,
    amp_v: Complex64,
}

impl PureQubit {
    /// Build a state from its |H⟩ and |V⟩ amplitudes.
    ///
    /// Fails unless the amplitudes are finite and normalized to 1 within
    /// [`ATOL_ALGEBRAIC`].
    pub fn new(amp_h: Complex64, amp_v: Complex64) -> Result<Self> {
        if !(amp_h.re.is_finite() && amp_h.im.is_finite() && amp_v.re.is_finite() && amp_v.im.is_finite()) {
            return Err(Error::NonFinite { context: "qubit amplitudes" });
        }
        let norm_sq = amp_h.norm_sqr() + amp_v.norm_sqr();
        if (norm_sq - 1.0).abs() > ATOL_ALGEBRAIC {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(PureQubit { amp_h, amp_v })
    }

    /// Horizontal polarization |H⟩.
    pub fn h() -> Self {
        PureQubit { amp_h: Complex64::new(1.0, 0.0), amp_v: C_ZERO }
    }

    /// Vertical polarization |V⟩.
    pub fn v() -> Self {
        PureQubit { amp_h: C_ZERO, amp_v: Complex64::new(1.0, 0.0) }
    }

    /// cos(θ/2)|H⟩ + e^{iφ} sin(θ/2)|V⟩ for Poincaré-sphere angles
    /// θ ∈ [0, π], φ ∈ [0, 2π).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        PureQubit {
            amp_h: Complex64::new(ct, 0.0),
            amp_v: Complex64::from_polar(st, phi),
        }
    }

    /// Equatorial-circle state (|H⟩ + e^{iφ}|V⟩)/√2.
    pub fn equatorial(phi: f64) -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        PureQubit {
            amp_h: Complex64::new(r, 0.0),
            amp_v: Complex64::from_polar(r, phi),
        }
    }

    /// Polar-circle state cos(θ)|H⟩ + sin(θ)|V⟩ (both amplitudes real).
    pub fn polar(theta: f64) -> Self {
        PureQubit {
            amp_h: Complex64::new(theta.cos(), 0.0),
            amp_v: Complex64::new(theta.sin(), 0.0),
        }
    }

    pub fn amp_h(&self) -> Complex64 {
        self.amp_h
    }

    pub fn amp_v(&self) -> Complex64 {
        self.amp_v
    }

    /// Fix the global phase: a_H real ≥ 0, and when a_H is exactly zero,
    /// a_V real ≥ 0. Idempotent.
    pub fn canonical(&self) -> Self {
        let r_h = self.amp_h.norm();
        if r_h == 0.0 {
            let r_v = self.amp_v.norm();
            return PureQubit { amp_h: C_ZERO, amp_v: Complex64::new(r_v, 0.0) };
        }
        let phase = self.amp_h / r_h;
        PureQubit {
            amp_h: Complex64::new(r_h, 0.0),
            amp_v: self.amp_v * phase.conj(),
        }
    }

    /// The orthogonal state −a_V*|H⟩ + a_H*|V⟩ (⟨ψ|ψ⊥⟩ = 0).
    pub fn orthogonal(&self) -> Self {
        PureQubit {
            amp_h: -self.amp_v.conj(),
            amp_v: self.amp_h.conj(),
        }
    }

    /// Rescale to exact unit norm; removes rounding drift after unitaries.
    pub(crate) fn renormalized(amp_h: Complex64, amp_v: Complex64) -> Self {
        let norm = (amp_h.norm_sqr() + amp_v.norm_sqr()).sqrt();
        PureQubit { amp_h: amp_h / norm, amp_v: amp_v / norm }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.amp_h, self.amp_v]
    }
}

/// ⟨a|b⟩.
pub fn inner(a: &PureQubit, b: &PureQubit) -> Complex64 {
    a.amp_h.conj() * b.amp_h + a.amp_v.conj() * b.amp_v
}

/// |⟨a|b⟩|² — global-phase-insensitive state comparison, in [0, 1].
pub fn fidelity(a: &PureQubit, b: &PureQubit) -> f64 {
    inner(a, b).norm_sqr()
}

/// A normalized two-photon state with amplitudes ordered (HH, HV, VH, VV);
/// the first photon is Alice's, the second Bob's.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState([Complex64; 4]);

impl TwoQubitState {
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if !amplitudes.iter().all(|a| a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::NonFinite { context: "two-qubit amplitudes" });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > ATOL_ALGEBRAIC {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(TwoQubitState(amplitudes))
    }

    pub(crate) fn renormalized(mut amplitudes: [Complex64; 4]) -> Self {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amplitudes.iter_mut() {
            *a /= norm;
        }
        TwoQubitState(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    /// Amplitude on |a⟩_A|b⟩_B with 0 = H, 1 = V.
    pub fn amplitude(&self, a: usize, b: usize) -> Complex64 {
        self.0[2 * a + b]
    }

    /// Apply a two-photon operator; the result is renormalized (intended for
    /// unitaries, where this only removes rounding drift).
    pub fn apply(&self, op: &CMatrix<4>) -> Self {
        Self::renormalized(op.mul_vec(&self.0))
    }

    /// |s⟩⟨s| as a raw matrix.
    pub fn outer(&self) -> CMatrix<4> {
        let mut m = CMatrix::<4>::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[i] * self.0[j].conj();
            }
        }
        m
    }
}

/// Product state |a⟩_A ⊗ |b⟩_B.
pub fn tensor_states(a: &PureQubit, b: &PureQubit) -> TwoQubitState {
    let [ah, av] = a.amplitudes();
    let [bh, bv] = b.amplitudes();
    TwoQubitState([ah * bh, ah * bv, av * bh, av * bv])
}

/// ⟨a|b⟩ for two-photon states.
pub fn inner_two_qubit(a: &TwoQubitState, b: &TwoQubitState) -> Complex64 {
    a.0.iter().zip(b.0.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// |⟨a|b⟩|² for two-photon states.
pub fn fidelity_two_qubit(a: &TwoQubitState, b: &TwoQubitState) -> f64 {
    inner_two_qubit(a, b).norm_sqr()
}
