//! Remote joint measurement on two photons: the general no-go and the
//! known-state fix.
//!
//! A unit-trace two-photon measurement effect is parameterized as
//! Π = (I⊗I + r·σ⊗I + I⊗s·σ + Σ_ij t_ij σ_i⊗σ_j)/4. On a product state
//! ρ_n ⊗ ρ_m the outcome probability is (1 + r·n + s·m + Σ t_ij n_i m_j)/4,
//! and on ρ_{−n} ⊗ ρ_m the r- and t-terms change sign. Flipping r and s on
//! the device cannot cancel the t-term, so Bob cannot equalize the two
//! branches for an unknown second photon. When the second photon's state is
//! known, re-preparing it as the complement (m → −m) together with the
//! double-spin-flip of the device (r → −r, s → −s, t fixed — the conjugation
//! Π ↦ (σ_y⊗σ_y) Π* (σ_y⊗σ_y), which preserves positivity) restores every
//! probability exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qmath::matrix::{kron, pauli, CMatrix};
use crate::qmath::{density_from_bloch, density::tensor_density, PoincareVector, ATOL_ALGEBRAIC, EIGENVALUE_FLOOR};
use crate::{Error, Result};

/// A two-photon measurement effect in the (r, s, t) parameterization.
/// Hermitian by construction (all parameters real); the constructor also
/// verifies the effect bounds 0 ≤ Π ≤ I.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointOperator {
    r: PoincareVector,
    s: PoincareVector,
    t: [[f64; 3]; 3],
}

impl JointOperator {
    pub fn new(r: PoincareVector, s: PoincareVector, t: [[f64; 3]; 3]) -> Result<Self> {
        if !t.iter().flatten().all(|c| c.is_finite()) {
            return Err(Error::NonFinite { context: "joint operator t coefficients" });
        }
        let op = JointOperator { r, s, t };
        let eigs = op.to_matrix().hermitian_eigenvalues();
        let (min, max) = (eigs[0], eigs[eigs.len() - 1]);
        if min < EIGENVALUE_FLOOR || max > 1.0 - EIGENVALUE_FLOOR {
            return Err(Error::InvalidEffect {
                reason: format!("eigenvalues in [{min:.6}, {max:.6}] exceed [0, 1]"),
            });
        }
        Ok(op)
    }

    /// |Ψ⁻⟩⟨Ψ⁻|: r = s = 0 and t = −I₃.
    pub fn singlet_projector() -> Self {
        let zero = PoincareVector::new(0.0, 0.0, 0.0).expect("zero vector");
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = -1.0;
        }
        JointOperator { r: zero, s: zero, t }
    }

    /// (I⊗I)/4: clicks with probability 1/4 on every product state.
    pub fn identity_effect() -> Self {
        let zero = PoincareVector::new(0.0, 0.0, 0.0).expect("zero vector");
        JointOperator { r: zero, s: zero, t: [[0.0; 3]; 3] }
    }

    pub fn r(&self) -> &PoincareVector {
        &self.r
    }

    pub fn s(&self) -> &PoincareVector {
        &self.s
    }

    pub fn t(&self) -> &[[f64; 3]; 3] {
        &self.t
    }

    /// Reconstruct the 4×4 matrix of Eq.-(9) form.
    pub fn to_matrix(&self) -> CMatrix<4> {
        let mut m = kron(&pauli::ID, &pauli::ID);
        let r = self.r.components();
        let s = self.s.components();
        for i in 0..3 {
            m = m + kron(&pauli::sigma(i), &pauli::ID).scale(Complex64::new(r[i], 0.0));
            m = m + kron(&pauli::ID, &pauli::sigma(i)).scale(Complex64::new(s[i], 0.0));
            for j in 0..3 {
                m = m + kron(&pauli::sigma(i), &pauli::sigma(j)).scale(Complex64::new(self.t[i][j], 0.0));
            }
        }
        m.scale(Complex64::new(0.25, 0.0))
    }

    /// Extract (r, s, t) from a unit-trace Hermitian effect matrix via
    /// Pauli traces, then re-validate the effect bounds.
    pub fn from_matrix(m: &CMatrix<4>) -> Result<Self> {
        let herm = m.hermiticity_deviation();
        if herm > ATOL_ALGEBRAIC {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > ATOL_ALGEBRAIC || tr.im.abs() > ATOL_ALGEBRAIC {
            return Err(Error::InvalidEffect {
                reason: format!("trace {} + {}i is outside the unit-trace family", tr.re, tr.im),
            });
        }
        let mut r = [0.0; 3];
        let mut s = [0.0; 3];
        let mut t = [[0.0; 3]; 3];
        for i in 0..3 {
            r[i] = (kron(&pauli::sigma(i), &pauli::ID) * *m).trace().re;
            s[i] = (kron(&pauli::ID, &pauli::sigma(i)) * *m).trace().re;
            for j in 0..3 {
                t[i][j] = (kron(&pauli::sigma(i), &pauli::sigma(j)) * *m).trace().re;
            }
        }
        JointOperator::new(
            PoincareVector::new(r[0], r[1], r[2])?,
            PoincareVector::new(s[0], s[1], s[2])?,
            t,
        )
    }

    /// The double-spin-flip of the device: r → −r, s → −s, t unchanged.
    /// Equals (σ_y⊗σ_y) Π* (σ_y⊗σ_y), an anti-unitary conjugation, so the
    /// result is a valid effect without re-checking eigenvalues.
    pub fn spin_flipped(&self) -> Self {
        JointOperator { r: self.r.flipped(), s: self.s.flipped(), t: self.t }
    }

    /// Device with independently sign-flipped r and s (what a device
    /// operator can dial in without touching the states). t is untouchable.
    pub fn with_signs(&self, flip_r: bool, flip_s: bool) -> Self {
        JointOperator {
            r: if flip_r { self.r.flipped() } else { self.r },
            s: if flip_s { self.s.flipped() } else { self.s },
            t: self.t,
        }
    }
}

/// Σ_ij t_ij n_i m_j.
fn t_bilinear(t: &[[f64; 3]; 3], n: &PoincareVector, m: &PoincareVector) -> f64 {
    let nc = n.components();
    let mc = m.components();
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += t[i][j] * nc[i] * mc[j];
        }
    }
    acc
}

/// Closed-form click probability (1 + r·n + s·m + Σ t_ij n_i m_j)/4 of the
/// device on ρ_n ⊗ ρ_m. Agrees with the 4×4 matrix trace to 1e-12.
pub fn joint_probability(pi: &JointOperator, n: &PoincareVector, m: &PoincareVector) -> f64 {
    0.25 * (1.0 + pi.r.dot(n) + pi.s.dot(m) + t_bilinear(&pi.t, n, m))
}

/// Matrix-trace route for the same probability: tr(Π ρ_n ⊗ ρ_m).
pub fn joint_probability_by_trace(
    pi: &JointOperator,
    n: &PoincareVector,
    m: &PoincareVector,
) -> f64 {
    let rho = tensor_density(&density_from_bloch(n), &density_from_bloch(m));
    rho.expectation(&pi.to_matrix())
}

/// |P(ρ_Ψ ⊗ ρ_Φ) − P(ρ_Ψ⊥ ⊗ ρ_Φ)| = |r·n + Σ t_ij n_i m_j| / 2: the gap Bob
/// cannot close by sign flips of (r, s) alone whenever the t-term is live.
pub fn joint_discrepancy(pi: &JointOperator, n: &PoincareVector, m: &PoincareVector) -> f64 {
    0.5 * (pi.r.dot(n) + t_bilinear(&pi.t, n, m)).abs()
}

/// For each of the four sign choices on (r, s): the residual
/// |P_simulated − P_target| when Bob holds ρ_{−n} but m stays fixed.
/// Returned as ((flip_r, flip_s), residual).
pub fn sign_flip_deviations(
    pi: &JointOperator,
    n: &PoincareVector,
    m: &PoincareVector,
) -> [((bool, bool), f64); 4] {
    let target = joint_probability(pi, n, m);
    [(false, false), (false, true), (true, false), (true, true)].map(|(fr, fs)| {
        let device = pi.with_signs(fr, fs);
        let simulated = joint_probability(&device, &n.flipped(), m);
        ((fr, fs), (simulated - target).abs())
    })
}

/// Proof record for the known-state equalization: over a grid of n, the
/// simulated probability on (flipped device, −n, −m) is compared to the
/// target on (device, n, m) along both analytic routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EqualizationCertificate {
    /// Deviation of the closed-form route; identically 0 (the flipped signs
    /// cancel term by term in the Eq.-(12) expansion).
    pub max_formula_deviation: f64,
    /// Deviation of the 4×4 matrix-trace route; below 1e-12.
    pub max_trace_deviation: f64,
    pub grid_points: usize,
    pub holds: bool,
}

/// Equalize joint statistics when Bob knows the second photon: flip the
/// device (r → −r, s → −s via the double-spin-flip) and re-prepare the known
/// photon as its complement (m → −m). Returns the flipped device, the
/// flipped m, and a certificate checked on a grid of unknown-photon
/// directions n.
pub fn equalize_known_state(
    pi: &JointOperator,
    m: &PoincareVector,
) -> (JointOperator, PoincareVector, EqualizationCertificate) {
    let flipped = pi.spin_flipped();
    let m_flipped = m.flipped();

    let steps = 10usize;
    let mut max_formula: f64 = 0.0;
    let mut max_trace: f64 = 0.0;
    let mut grid_points = 0usize;
    for i in 0..steps {
        for j in 0..steps {
            let n = PoincareVector::from_angles(
                (i as f64 + 0.5) * std::f64::consts::PI / steps as f64,
                (j as f64 + 0.5) * std::f64::consts::TAU / steps as f64,
            );
            let target = joint_probability(pi, &n, m);
            let simulated = joint_probability(&flipped, &n.flipped(), &m_flipped);
            max_formula = max_formula.max((simulated - target).abs());

            let target_tr = joint_probability_by_trace(pi, &n, m);
            let simulated_tr = joint_probability_by_trace(&flipped, &n.flipped(), &m_flipped);
            max_trace = max_trace.max((simulated_tr - target_tr).abs());
            grid_points += 1;
        }
    }
    let holds = max_formula == 0.0 && max_trace < ATOL_ALGEBRAIC;
    (
        flipped,
        m_flipped,
        EqualizationCertificate {
            max_formula_deviation: max_formula,
            max_trace_deviation: max_trace,
            grid_points,
            holds,
        },
    )
}

/// The strategy of flipping only m and r, leaving s alone. Returns the
/// device, the flipped m, and the analytic residual |s·m|/2 that survives;
/// zero only when s ⊥ m.
pub fn equalize_literal(
    pi: &JointOperator,
    m: &PoincareVector,
) -> (JointOperator, PoincareVector, f64) {
    let device = pi.with_signs(true, false);
    let residual = 0.5 * pi.s.dot(m).abs();
    (device, m.flipped(), residual)
}
