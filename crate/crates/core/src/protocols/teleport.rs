//! Teleportation baseline: one ebit and two classical bits per photon,
//! against which RSP's single classical bit is compared.
//!
//! Alice Bell-measures (input, her singlet half), sends the two-bit outcome,
//! and Bob applies the standard Pauli correction. With the singlet as the
//! resource the table is Ψ⁻ → I, Ψ⁺ → σ_z, Φ⁻ → σ_x, Φ⁺ → iσ_y.

use serde::{Deserialize, Serialize};

use crate::engine::{GateLabel, PartyId, ResourceLedger, Session};
use crate::qmath::{BellOutcome, PureQubit, Unitary2};
use crate::Result;

/// Bob's conditional Pauli correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PauliCorrection {
    Identity,
    SigmaX,
    SigmaZ,
    ISigmaY,
}

impl PauliCorrection {
    pub fn unitary(&self) -> Unitary2 {
        match self {
            PauliCorrection::Identity => Unitary2::identity(),
            PauliCorrection::SigmaX => Unitary2::sigma_x(),
            PauliCorrection::SigmaZ => Unitary2::sigma_z(),
            PauliCorrection::ISigmaY => Unitary2::i_sigma_y(),
        }
    }

    pub fn gate_label(&self) -> GateLabel {
        match self {
            PauliCorrection::Identity => GateLabel::Identity,
            PauliCorrection::SigmaX => GateLabel::SigmaX,
            PauliCorrection::SigmaZ => GateLabel::SigmaZ,
            PauliCorrection::ISigmaY => GateLabel::ISigmaY,
        }
    }
}

/// Correction for a Bell outcome, singlet resource.
pub fn correction_for(outcome: BellOutcome) -> PauliCorrection {
    match outcome {
        BellOutcome::PsiMinus => PauliCorrection::Identity,
        BellOutcome::PsiPlus => PauliCorrection::SigmaZ,
        BellOutcome::PhiMinus => PauliCorrection::SigmaX,
        BellOutcome::PhiPlus => PauliCorrection::ISigmaY,
    }
}

/// The two classical bits encoding a Bell outcome:
/// (needs σ_x, needs σ_z).
pub fn outcome_bits(outcome: BellOutcome) -> (bool, bool) {
    match outcome {
        BellOutcome::PsiMinus => (false, false),
        BellOutcome::PsiPlus => (false, true),
        BellOutcome::PhiMinus => (true, false),
        BellOutcome::PhiPlus => (true, true),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportResult {
    pub outcome: BellOutcome,
    pub correction: PauliCorrection,
    pub bob_state: PureQubit,
    /// Always (1 ebit, 2 cbits forward, 0 backward).
    pub ledger: ResourceLedger,
}

/// Teleport `input` from Alice to Bob inside a session.
pub fn run(session: &mut Session, input: &PureQubit) -> Result<TeleportResult> {
    run_impl(session, input, None)
}

/// Teleport with the Bell measurement collapsed onto a chosen outcome (all
/// four occur with probability 1/4, so forcing is always physical).
pub fn run_forced(
    session: &mut Session,
    input: &PureQubit,
    outcome: BellOutcome,
) -> Result<TeleportResult> {
    run_impl(session, input, Some(outcome))
}

fn run_impl(
    session: &mut Session,
    input: &PureQubit,
    forced: Option<BellOutcome>,
) -> Result<TeleportResult> {
    let input_handle = session.prepare_local(PartyId::Alice, *input);
    let (a_half, b_half) = session.distribute_epr();

    let outcome = match forced {
        None => session.bell_measure(PartyId::Alice, input_handle, a_half)?,
        Some(o) => session.bell_measure_forced(PartyId::Alice, input_handle, a_half, o)?,
    };

    let (bit_x, bit_z) = outcome_bits(outcome);
    session.send_classical_bit(PartyId::Alice, bit_x);
    session.send_classical_bit(PartyId::Alice, bit_z);

    let correction = correction_for(outcome);
    session.apply_correction(PartyId::Bob, b_half, &correction.unitary(), correction.gate_label())?;
    let bob_state = session.peek(b_half)?;

    Ok(TeleportResult { outcome, correction, bob_state, ledger: session.ledger() })
}
