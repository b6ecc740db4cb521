//! Exact remote state preparation of a special photon.
//!
//! Alice knows |Ψ⟩ = α|H⟩ + β|V⟩ (α real); Bob knows only the ensemble it
//! was drawn from. The protocol:
//!
//! 1. they share a singlet pair (1 ebit);
//! 2. Alice applies U(α, β)† to her half, turning the pair into
//!    (|H⟩_A|Ψ⊥⟩_B − |V⟩_A|Ψ⟩_B)/√2;
//! 3. Alice projects onto {|H⟩, |V⟩} and sends the outcome (1 cbit) —
//!    bit 1 means |V⟩: Bob already holds |Ψ⟩ up to phase;
//! 4. on bit 0 Bob holds |Ψ⊥⟩ and corrects: iσ_y for a polar-circle state,
//!    σ_z for an equatorial-circle state. No correction exists for an
//!    arbitrary state (complementing an unknown qubit is anti-unitary), so
//!    the arbitrary run keeps the complement and the average fidelity over
//!    many runs settles at 1/2.

use serde::{Deserialize, Serialize};

use super::singlet::qubit_basis_rotation;
use crate::engine::{GateLabel, PartyId, ResourceLedger, Session};
use crate::qmath::{fidelity, Polarization, PureQubit, Seed, Unitary2, ATOL_ROUNDTRIP};
use crate::{Error, Result};

/// The state family Alice announces to Bob ahead of time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnsembleKind {
    /// α and β both real: a great circle through the poles.
    PolarCircle,
    /// α = 1/√2, β = e^{iφ}/√2: the equator.
    EquatorialCircle,
    /// Anywhere on the sphere; no correction exists for the bad branch.
    Arbitrary,
}

impl EnsembleKind {
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleKind::PolarCircle => "polar-circle",
            EnsembleKind::EquatorialCircle => "equatorial-circle",
            EnsembleKind::Arbitrary => "arbitrary",
        }
    }
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Bob's conditional correction, keyed off the declared ensemble and the
/// received bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Correction {
    Identity,
    ISigmaY,
    SigmaZ,
}

impl Correction {
    pub fn unitary(&self) -> Unitary2 {
        match self {
            Correction::Identity => Unitary2::identity(),
            Correction::ISigmaY => Unitary2::i_sigma_y(),
            Correction::SigmaZ => Unitary2::sigma_z(),
        }
    }

    pub fn gate_label(&self) -> GateLabel {
        match self {
            Correction::Identity => GateLabel::Identity,
            Correction::ISigmaY => GateLabel::ISigmaY,
            Correction::SigmaZ => GateLabel::SigmaZ,
        }
    }
}

/// Everything observable about one RSP run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RspRunResult {
    pub alice_outcome: Polarization,
    pub bob_state_before_correction: PureQubit,
    pub bob_state_after_correction: PureQubit,
    pub correction_applied: Correction,
    /// Frozen at run end; always (1 ebit, 1 cbit forward, 0 backward).
    pub ledger: ResourceLedger,
}

/// Check that a target actually lies on the declared circle (tolerance
/// [`ATOL_ROUNDTRIP`], since targets usually arrive through angles).
pub fn validate_ensemble(target: &PureQubit, kind: EnsembleKind) -> Result<()> {
    let canon = target.canonical();
    match kind {
        EnsembleKind::PolarCircle => {
            let im = canon.amp_v().im.abs();
            if im > ATOL_ROUNDTRIP {
                return Err(Error::EnsembleViolation {
                    kind: kind.name(),
                    reason: format!("beta has imaginary part {im:.3e} in canonical phase"),
                });
            }
        }
        EnsembleKind::EquatorialCircle => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let dev_h = (canon.amp_h().norm() - r).abs();
            let dev_v = (canon.amp_v().norm() - r).abs();
            if dev_h > ATOL_ROUNDTRIP || dev_v > ATOL_ROUNDTRIP {
                return Err(Error::EnsembleViolation {
                    kind: kind.name(),
                    reason: format!(
                        "|alpha| = {:.12}, |beta| = {:.12}; both must be 1/sqrt(2)",
                        canon.amp_h().norm(),
                        canon.amp_v().norm()
                    ),
                });
            }
        }
        EnsembleKind::Arbitrary => {}
    }
    Ok(())
}

/// The correction Bob applies for a given (ensemble, outcome) pair.
pub fn correction_table(kind: EnsembleKind, outcome: Polarization) -> Correction {
    match (outcome, kind) {
        // bit 1 (|V⟩): Bob already holds |Ψ⟩, up to global phase
        (Polarization::V, _) => Correction::Identity,
        (Polarization::H, EnsembleKind::PolarCircle) => Correction::ISigmaY,
        (Polarization::H, EnsembleKind::EquatorialCircle) => Correction::SigmaZ,
        // no physical correction exists; keep the complement
        (Polarization::H, EnsembleKind::Arbitrary) => Correction::Identity,
    }
}

/// One full RSP run inside a session.
pub fn run(session: &mut Session, target: &PureQubit, kind: EnsembleKind) -> Result<RspRunResult> {
    run_impl(session, target, kind, None)
}

/// One RSP run with Alice's measurement collapsed onto a chosen branch
/// (both branches occur with probability 1/2, so forcing is always physical).
pub fn run_forced(
    session: &mut Session,
    target: &PureQubit,
    kind: EnsembleKind,
    outcome: Polarization,
) -> Result<RspRunResult> {
    run_impl(session, target, kind, Some(outcome))
}

fn run_impl(
    session: &mut Session,
    target: &PureQubit,
    kind: EnsembleKind,
    forced: Option<Polarization>,
) -> Result<RspRunResult> {
    validate_ensemble(target, kind)?;
    let canon = target.canonical();
    let rotation = qubit_basis_rotation(&canon);

    let (a_half, b_half) = session.distribute_epr();

    let dagger = rotation.dagger();
    session.apply_unitary(
        PartyId::Alice,
        a_half,
        &dagger,
        GateLabel::Su2Dagger {
            alpha: canon.amp_h().re,
            beta_re: canon.amp_v().re,
            beta_im: canon.amp_v().im,
        },
    )?;

    let alice_outcome = match forced {
        None => session.measure(PartyId::Alice, a_half)?,
        Some(o) => session.measure_forced(PartyId::Alice, a_half, o)?,
    };
    session.send_classical_bit(PartyId::Alice, alice_outcome == Polarization::V);

    let bob_before = session.peek(b_half)?;
    let correction = correction_table(kind, alice_outcome);
    session.apply_correction(PartyId::Bob, b_half, &correction.unitary(), correction.gate_label())?;
    let bob_after = session.peek(b_half)?;

    Ok(RspRunResult {
        alice_outcome,
        bob_state_before_correction: bob_before,
        bob_state_after_correction: bob_after,
        correction_applied: correction,
        ledger: session.ledger(),
    })
}

/// Monte Carlo mean of fidelity(Bob's corrected state, target) over `shots`
/// independent runs with per-shot derived seeds. Exactly 1 for great-circle
/// ensembles; tends to 1/2 for generic arbitrary targets.
pub fn average_fidelity(
    target: &PureQubit,
    kind: EnsembleKind,
    shots: u64,
    seed: Seed,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    validate_ensemble(target, kind)?;
    let mut total = 0.0;
    for shot in 0..shots {
        let mut session = Session::new(seed.derive(shot));
        let result = run(&mut session, target, kind)?;
        total += fidelity(&result.bob_state_after_correction, target);
    }
    Ok(total / shots as f64)
}
