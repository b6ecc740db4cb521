//! Projective measurements with seeded sampling.
//!
//! Outcomes are drawn by a single uniform variate against cumulative branch
//! probabilities, so a zero-probability branch can never be selected and
//! identical seeds reproduce identical outcome sequences.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::bloch::PoincareVector;
use super::matrix::{pauli, CMatrix, C_ZERO};
use super::state::{PureQubit, TwoQubitState};
use crate::{Error, Result};

/// Outcome of a von Neumann projection onto the {|H⟩, |V⟩} basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

impl std::fmt::Display for Polarization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Polarization::H => write!(f, "H"),
            Polarization::V => write!(f, "V"),
        }
    }
}

/// Outcome of a spin measurement along a Poincaré axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// The four Bell states on an (input, EPR-half) photon pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BellOutcome {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiPlus,
        BellOutcome::PsiMinus,
    ];
}

impl std::fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BellOutcome::PhiPlus => write!(f, "Phi+"),
            BellOutcome::PhiMinus => write!(f, "Phi-"),
            BellOutcome::PsiPlus => write!(f, "Psi+"),
            BellOutcome::PsiMinus => write!(f, "Psi-"),
        }
    }
}

/// The Bell state associated with an outcome, in (HH, HV, VH, VV) order.
pub fn bell_state(outcome: BellOutcome) -> TwoQubitState {
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let amps = match outcome {
        BellOutcome::PhiPlus => [r, C_ZERO, C_ZERO, r],
        BellOutcome::PhiMinus => [r, C_ZERO, C_ZERO, -r],
        BellOutcome::PsiPlus => [C_ZERO, r, r, C_ZERO],
        BellOutcome::PsiMinus => [C_ZERO, r, -r, C_ZERO],
    };
    TwoQubitState::new(amps).expect("Bell states are normalized")
}

/// Measure a single photon in the {|H⟩, |V⟩} basis.
pub fn measure_qubit(psi: &PureQubit, rng: &mut impl Rng) -> (Polarization, PureQubit) {
    let p_h = psi.amp_h().norm_sqr();
    if rng.random::<f64>() < p_h {
        (Polarization::H, PureQubit::h())
    } else {
        (Polarization::V, PureQubit::v())
    }
}

/// Probability that a projection of the first photon yields |H⟩.
pub fn prob_subsystem_a_h(state: &TwoQubitState) -> f64 {
    state.amplitude(0, 0).norm_sqr() + state.amplitude(0, 1).norm_sqr()
}

/// Measure the first photon of a two-photon state in the {|H⟩, |V⟩} basis.
/// Returns the outcome together with the second photon's collapsed state.
pub fn measure_subsystem_a(state: &TwoQubitState, rng: &mut impl Rng) -> (Polarization, PureQubit) {
    let p_h = prob_subsystem_a_h(state);
    let outcome = if rng.random::<f64>() < p_h { Polarization::H } else { Polarization::V };
    let residual = collapse_b(state, outcome);
    (outcome, residual)
}

/// Collapse onto a chosen outcome of the first photon; fails if that branch
/// has zero probability.
pub fn measure_subsystem_a_forced(state: &TwoQubitState, outcome: Polarization) -> Result<PureQubit> {
    let p = match outcome {
        Polarization::H => prob_subsystem_a_h(state),
        Polarization::V => 1.0 - prob_subsystem_a_h(state),
    };
    if p <= f64::EPSILON {
        return Err(Error::ZeroProbabilityBranch { outcome: outcome.to_string() });
    }
    Ok(collapse_b(state, outcome))
}

fn collapse_b(state: &TwoQubitState, outcome: Polarization) -> PureQubit {
    let a = match outcome {
        Polarization::H => 0,
        Polarization::V => 1,
    };
    PureQubit::renormalized(state.amplitude(a, 0), state.amplitude(a, 1))
}

/// Measure the observable axis·σ on a single photon. The axis must be a unit
/// Poincaré vector; outcomes project with P_± = (I ± axis·σ)/2.
pub fn measure_along(
    axis: &PoincareVector,
    psi: &PureQubit,
    rng: &mut impl Rng,
) -> Result<(Sign, PureQubit)> {
    if !axis.is_unit() {
        return Err(Error::NotUnitVector { norm: axis.norm() });
    }
    let half = Complex64::new(0.5, 0.0);
    let p_plus_op = (CMatrix::<2>::identity() + pauli::dot(axis.components())).scale(half);
    let v = psi.amplitudes();
    let projected = p_plus_op.mul_vec(&v);
    let p_plus = projected.iter().map(|a| a.norm_sqr()).sum::<f64>();
    if rng.random::<f64>() < p_plus {
        Ok((Sign::Plus, PureQubit::renormalized(projected[0], projected[1])))
    } else {
        let p_minus_op = (CMatrix::<2>::identity() - pauli::dot(axis.components())).scale(half);
        let minus = p_minus_op.mul_vec(&v);
        Ok((Sign::Minus, PureQubit::renormalized(minus[0], minus[1])))
    }
}

/// Bell-basis measurement on (input photon, first half of a shared pair).
/// Returns the outcome and the collapsed state of the pair's second half.
pub fn bell_measure_with_ancilla(
    input: &PureQubit,
    pair: &TwoQubitState,
    rng: &mut impl Rng,
) -> (BellOutcome, PureQubit) {
    let branches = bell_branches(input, pair);
    let u = rng.random::<f64>();
    let mut acc = 0.0;
    for (outcome, amps, prob) in branches.iter() {
        acc += prob;
        if u < acc {
            return (*outcome, PureQubit::renormalized(amps[0], amps[1]));
        }
    }
    // guard against cumulative rounding at u ≈ 1
    let (outcome, amps, _) = branches
        .iter()
        .max_by(|a, b| a.2.total_cmp(&b.2))
        .expect("four Bell branches");
    (*outcome, PureQubit::renormalized(amps[0], amps[1]))
}

/// Collapse the Bell measurement onto a chosen outcome; fails if that branch
/// has zero probability.
pub fn bell_measure_with_ancilla_forced(
    input: &PureQubit,
    pair: &TwoQubitState,
    outcome: BellOutcome,
) -> Result<(PureQubit, f64)> {
    let branches = bell_branches(input, pair);
    let (_, amps, prob) = branches
        .iter()
        .find(|(o, _, _)| *o == outcome)
        .expect("all Bell outcomes enumerated");
    if *prob <= f64::EPSILON {
        return Err(Error::ZeroProbabilityBranch { outcome: outcome.to_string() });
    }
    Ok((PureQubit::renormalized(amps[0], amps[1]), *prob))
}

/// Unnormalized conditional amplitudes of the pair's second half for each
/// Bell outcome on (input, first half): φ_k[b] = Σ_{c,a} B_k[c,a]* ψ[c] P[a,b].
fn bell_branches(
    input: &PureQubit,
    pair: &TwoQubitState,
) -> [(BellOutcome, [Complex64; 2], f64); 4] {
    let psi = input.amplitudes();
    BellOutcome::ALL.map(|outcome| {
        let basis = bell_state(outcome);
        let mut residual = [C_ZERO; 2];
        for (b, res) in residual.iter_mut().enumerate() {
            let mut acc = C_ZERO;
            for c in 0..2 {
                for a in 0..2 {
                    acc += basis.amplitude(c, a).conj() * psi[c] * pair.amplitude(a, b);
                }
            }
            *res = acc;
        }
        let prob = residual.iter().map(|a| a.norm_sqr()).sum::<f64>();
        (outcome, residual, prob)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::rng::Seed;
    use crate::qmath::state::fidelity;

    #[test]
    fn basis_state_measures_deterministically() {
        let mut rng = Seed(41).rng();
        for _ in 0..50 {
            let (outcome, collapsed) = measure_qubit(&PureQubit::h(), &mut rng);
            assert_eq!(outcome, Polarization::H);
            assert!((fidelity(&collapsed, &PureQubit::h()) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn equal_superposition_statistics_within_four_sigma() {
        // 10^5 draws on (|H⟩+|V⟩)/√2 at seed 42; binomial bound oracle
        let shots = 100_000u64;
        let psi = PureQubit::from_angles(std::f64::consts::FRAC_PI_2, 0.0);
        let mut rng = Seed(42).rng();
        let mut h_count = 0u64;
        for _ in 0..shots {
            if measure_qubit(&psi, &mut rng).0 == Polarization::H {
                h_count += 1;
            }
        }
        let freq = h_count as f64 / shots as f64;
        let sigma = (0.25 / shots as f64).sqrt();
        assert!(
            (freq - 0.5).abs() < 4.0 * sigma,
            "frequency {freq} outside 4 sigma of 0.5"
        );
    }

    #[test]
    fn sampling_is_reproducible() {
        let psi = PureQubit::from_angles(1.1, 0.4);
        let draw = |seed: u64| {
            let mut rng = Seed(seed).rng();
            (0..200).map(|_| measure_qubit(&psi, &mut rng).0).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn measure_along_reduces_to_computational_on_z() {
        let z = PoincareVector::unit(0.0, 0.0, 1.0).unwrap();
        let mut rng = Seed(43).rng();
        let (sign, collapsed) = measure_along(&z, &PureQubit::h(), &mut rng).unwrap();
        assert_eq!(sign, Sign::Plus);
        assert!((fidelity(&collapsed, &PureQubit::h()) - 1.0).abs() < 1e-12);
        assert!(measure_along(&PoincareVector::new(0.2, 0.0, 0.0).unwrap(), &PureQubit::h(), &mut rng).is_err());
    }

    #[test]
    fn forced_zero_probability_branch_is_rejected() {
        let hh = crate::qmath::state::tensor_states(&PureQubit::h(), &PureQubit::h());
        assert!(measure_subsystem_a_forced(&hh, Polarization::V).is_err());
        assert!(measure_subsystem_a_forced(&hh, Polarization::H).is_ok());
    }

    #[test]
    fn bell_states_are_orthonormal() {
        for a in BellOutcome::ALL {
            for b in BellOutcome::ALL {
                let overlap = crate::qmath::state::inner_two_qubit(&bell_state(a), &bell_state(b));
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((overlap - Complex64::new(expected, 0.0)).norm() < 1e-12);
            }
        }
    }
}
