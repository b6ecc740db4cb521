//! Two-party protocol orchestration.
//!
//! A [`Session`] owns the quantum state, the seeded random stream, the
//! resource ledger and the event transcript of one protocol run. Parties
//! never hold state — only opaque [`QubitHandle`]s — which encodes
//! structurally that the only channel between Alice and Bob is classical.
//! Every physical action appends one [`Event`]; [`enforce_locality`]
//! re-validates a finished transcript against the two-party rules.

use serde::{Deserialize, Serialize};

use crate::qmath::{
    bell_measure_with_ancilla, bell_measure_with_ancilla_forced, measure_qubit,
    measure_subsystem_a, measure_subsystem_a_forced, prob_subsystem_a_h, BellOutcome,
    Polarization, ProtocolRng, PureQubit, Seed, TwoQubitState, Unitary2,
};
use crate::{Error, Result};

/// One of the two protocol parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartyId {
    Alice,
    Bob,
}

impl PartyId {
    pub fn peer(self) -> PartyId {
        match self {
            PartyId::Alice => PartyId::Bob,
            PartyId::Bob => PartyId::Alice,
        }
    }
}

impl std::fmt::Display for PartyId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PartyId::Alice => write!(f, "alice"),
            PartyId::Bob => write!(f, "bob"),
        }
    }
}

/// Consumed-resource counters for one run. Monotone while the run is live;
/// results carry a frozen copy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceLedger {
    pub ebits_consumed: u64,
    pub cbits_alice_to_bob: u64,
    pub cbits_bob_to_alice: u64,
}

/// Opaque reference to a qubit inside a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QubitHandle {
    owner: PartyId,
    slot: Slot,
}

impl QubitHandle {
    pub fn owner(&self) -> PartyId {
        self.owner
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    EprA,
    EprB,
    Local(usize),
}

/// Label for a gate recorded in the transcript.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateLabel {
    /// U(α, β)† — the rotation Alice applies to her half.
    Su2Dagger { alpha: f64, beta_re: f64, beta_im: f64 },
    Identity,
    SigmaX,
    SigmaZ,
    ISigmaY,
}

impl std::fmt::Display for GateLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateLabel::Su2Dagger { alpha, beta_re, beta_im } => {
                write!(f, "U({alpha},{beta_re}{beta_im:+}i)^dag")
            }
            GateLabel::Identity => write!(f, "I"),
            GateLabel::SigmaX => write!(f, "sigma_x"),
            GateLabel::SigmaZ => write!(f, "sigma_z"),
            GateLabel::ISigmaY => write!(f, "i*sigma_y"),
        }
    }
}

/// What happened at one step of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum EventKind {
    /// The EPR source handed one half to each party.
    DistributeEpr,
    /// A party introduced a locally prepared photon.
    PrepareLocal { owner: PartyId },
    /// A local unitary on one qubit.
    LocalUnitary { target_owner: PartyId, gate: GateLabel },
    /// A computational-basis projection on one qubit.
    Measure { target_owner: PartyId, outcome: Polarization, forced: bool },
    /// A Bell-basis projection on two qubits of the same party.
    BellMeasure { target_owner: PartyId, outcome: BellOutcome, forced: bool },
    /// One classical bit over the channel.
    ClassicalSend { from: PartyId, to: PartyId, bit: bool },
    /// A conditional local unitary keyed off received classical data.
    Correction { target_owner: PartyId, gate: GateLabel },
}

/// One transcript entry: who did what, in causal order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub index: usize,
    /// The acting party; `None` for the entanglement source.
    pub party: Option<PartyId>,
    pub kind: EventKind,
}

impl Event {
    /// One line of the serialized transcript: index, party, action, payload.
    pub fn render(&self) -> String {
        let party = match self.party {
            Some(p) => p.to_string(),
            None => "-".to_string(),
        };
        let (action, payload) = match &self.kind {
            EventKind::DistributeEpr => ("distribute-epr".to_string(), "singlet pair, one half per party".to_string()),
            EventKind::PrepareLocal { owner } => ("prepare-local".to_string(), format!("photon at {owner}")),
            EventKind::LocalUnitary { target_owner, gate } => {
                ("unitary".to_string(), format!("{gate} on {target_owner}'s qubit"))
            }
            EventKind::Measure { target_owner, outcome, forced } => (
                "measure".to_string(),
                format!(
                    "{{H,V}} basis on {target_owner}'s qubit -> {outcome}{}",
                    if *forced { " (forced)" } else { "" }
                ),
            ),
            EventKind::BellMeasure { target_owner, outcome, forced } => (
                "bell-measure".to_string(),
                format!(
                    "Bell basis on {target_owner}'s qubits -> {outcome}{}",
                    if *forced { " (forced)" } else { "" }
                ),
            ),
            EventKind::ClassicalSend { from, to, bit } => (
                "classical-send".to_string(),
                format!("{from} -> {to}: bit {}", u8::from(*bit)),
            ),
            EventKind::Correction { target_owner, gate } => {
                ("correction".to_string(), format!("{gate} on {target_owner}'s qubit"))
            }
        };
        format!("{}\t{}\t{}\t{}", self.index, party, action, payload)
    }
}

/// Ordered event log of one run, with the seed that drove it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub seed: Seed,
    pub events: Vec<Event>,
}

impl Transcript {
    pub fn new(seed: Seed) -> Self {
        Transcript { seed, events: Vec::new() }
    }

    pub fn push(&mut self, party: Option<PartyId>, kind: EventKind) {
        let index = self.events.len();
        self.events.push(Event { index, party, kind });
    }

    /// Line-oriented text form: a seed header, then one event per line.
    pub fn render(&self) -> String {
        let mut out = format!("# seed {}\n", self.seed);
        for event in &self.events {
            out.push_str(&event.render());
            out.push('\n');
        }
        out
    }
}

/// Result of re-validating a transcript against the two-party rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityReport {
    pub ok: bool,
    /// Index and description of the first violating event, if any.
    pub first_violation: Option<(usize, String)>,
}

/// Check that every quantum action touches only the acting party's own
/// subsystem and that every correction is preceded by a classical message
/// to the correcting party.
pub fn enforce_locality(transcript: &Transcript) -> LocalityReport {
    let mut delivered_to: Vec<PartyId> = Vec::new();
    for event in &transcript.events {
        let violation = |msg: String| LocalityReport {
            ok: false,
            first_violation: Some((event.index, msg)),
        };
        match &event.kind {
            EventKind::DistributeEpr => {}
            EventKind::PrepareLocal { owner } => {
                if event.party != Some(*owner) {
                    return violation(format!("{owner}'s photon prepared by {:?}", event.party));
                }
            }
            EventKind::LocalUnitary { target_owner, .. }
            | EventKind::Measure { target_owner, .. }
            | EventKind::BellMeasure { target_owner, .. } => {
                if event.party != Some(*target_owner) {
                    return violation(format!(
                        "quantum action on {target_owner}'s subsystem performed by {:?}",
                        event.party
                    ));
                }
            }
            EventKind::ClassicalSend { from, to, .. } => {
                if event.party != Some(*from) {
                    return violation(format!("classical send from {from} logged by {:?}", event.party));
                }
                delivered_to.push(*to);
            }
            EventKind::Correction { target_owner, .. } => {
                if event.party != Some(*target_owner) {
                    return violation(format!(
                        "correction on {target_owner}'s subsystem performed by {:?}",
                        event.party
                    ));
                }
                if !delivered_to.contains(target_owner) {
                    return violation(format!(
                        "correction by {target_owner} precedes any classical message to them"
                    ));
                }
            }
        }
    }
    LocalityReport { ok: true, first_violation: None }
}

enum PairState {
    /// No pair distributed yet (or the previous one fully consumed).
    Absent,
    /// Both halves live, jointly in `state`.
    Shared(TwoQubitState),
    /// One half has been measured; the other survives as a pure state.
    Collapsed { live_half: Slot, residual: PureQubit },
}

struct LocalQubit {
    owner: PartyId,
    state: PureQubit,
    live: bool,
}

/// One protocol run: quantum state, seeded randomness, ledger, transcript.
pub struct Session {
    rng: ProtocolRng,
    ledger: ResourceLedger,
    transcript: Transcript,
    pair: PairState,
    locals: Vec<LocalQubit>,
}

impl Session {
    /// Fresh session: empty transcript, zeroed ledger, generator derived
    /// from the seed.
    pub fn new(seed: Seed) -> Self {
        Session {
            rng: seed.rng(),
            ledger: ResourceLedger::default(),
            transcript: Transcript::new(seed),
            pair: PairState::Absent,
            locals: Vec::new(),
        }
    }

    pub fn seed(&self) -> Seed {
        self.transcript.seed
    }

    pub fn ledger(&self) -> ResourceLedger {
        self.ledger
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    /// Share a fresh singlet pair: Alice gets the first photon, Bob the
    /// second. Counts one ebit. Any previous pair is discarded.
    pub fn distribute_epr(&mut self) -> (QubitHandle, QubitHandle) {
        self.pair = PairState::Shared(crate::protocols::singlet::epr_singlet());
        self.ledger.ebits_consumed += 1;
        self.transcript.push(None, EventKind::DistributeEpr);
        (
            QubitHandle { owner: PartyId::Alice, slot: Slot::EprA },
            QubitHandle { owner: PartyId::Bob, slot: Slot::EprB },
        )
    }

    /// A party brings in a locally prepared photon (teleport input, Bob's
    /// known second photon). No shared resource is consumed.
    pub fn prepare_local(&mut self, owner: PartyId, state: PureQubit) -> QubitHandle {
        let slot = Slot::Local(self.locals.len());
        self.locals.push(LocalQubit { owner, state, live: true });
        self.transcript.push(Some(owner), EventKind::PrepareLocal { owner });
        QubitHandle { owner, slot }
    }

    /// One classical bit over the channel; delivered unmodified.
    pub fn send_classical_bit(&mut self, from: PartyId, bit: bool) -> bool {
        match from {
            PartyId::Alice => self.ledger.cbits_alice_to_bob += 1,
            PartyId::Bob => self.ledger.cbits_bob_to_alice += 1,
        }
        self.transcript.push(
            Some(from),
            EventKind::ClassicalSend { from, to: from.peer(), bit },
        );
        bit
    }

    fn check_access(&self, actor: PartyId, handle: QubitHandle) -> Result<()> {
        if actor != handle.owner {
            return Err(Error::AccessViolation { party: actor, owner: handle.owner });
        }
        Ok(())
    }

    /// Apply a local unitary to one qubit. Fails if the actor does not own
    /// the qubit or the qubit is no longer live.
    pub fn apply_unitary(
        &mut self,
        actor: PartyId,
        handle: QubitHandle,
        u: &Unitary2,
        gate: GateLabel,
    ) -> Result<()> {
        self.apply_gate(actor, handle, u)?;
        self.transcript.push(
            Some(actor),
            EventKind::LocalUnitary { target_owner: handle.owner, gate },
        );
        Ok(())
    }

    /// Like [`Session::apply_unitary`], logged as a correction keyed off
    /// classical data received earlier.
    pub fn apply_correction(
        &mut self,
        actor: PartyId,
        handle: QubitHandle,
        u: &Unitary2,
        gate: GateLabel,
    ) -> Result<()> {
        self.apply_gate(actor, handle, u)?;
        self.transcript.push(
            Some(actor),
            EventKind::Correction { target_owner: handle.owner, gate },
        );
        Ok(())
    }

    fn apply_gate(&mut self, actor: PartyId, handle: QubitHandle, u: &Unitary2) -> Result<()> {
        self.check_access(actor, handle)?;
        match handle.slot {
            Slot::Local(i) => {
                let q = &mut self.locals[i];
                if !q.live {
                    return Err(Error::DeadHandle);
                }
                q.state = u.apply(&q.state);
            }
            half @ (Slot::EprA | Slot::EprB) => match &mut self.pair {
                PairState::Shared(state) => {
                    let id = crate::qmath::matrix::pauli::ID;
                    let op = match half {
                        Slot::EprA => crate::qmath::kron(u.matrix(), &id),
                        _ => crate::qmath::kron(&id, u.matrix()),
                    };
                    *state = state.apply(&op);
                }
                PairState::Collapsed { live_half, residual } if *live_half == half => {
                    *residual = u.apply(residual);
                }
                _ => return Err(Error::DeadHandle),
            },
        }
        Ok(())
    }

    /// Project one qubit onto the {|H⟩, |V⟩} basis.
    pub fn measure(&mut self, actor: PartyId, handle: QubitHandle) -> Result<Polarization> {
        self.measure_impl(actor, handle, None)
    }

    /// Collapse a measurement onto a chosen branch (simulation device for
    /// exploring both halves of a protocol). The event is marked forced.
    pub fn measure_forced(
        &mut self,
        actor: PartyId,
        handle: QubitHandle,
        outcome: Polarization,
    ) -> Result<Polarization> {
        self.measure_impl(actor, handle, Some(outcome))
    }

    fn measure_impl(
        &mut self,
        actor: PartyId,
        handle: QubitHandle,
        forced: Option<Polarization>,
    ) -> Result<Polarization> {
        self.check_access(actor, handle)?;
        let outcome = match handle.slot {
            Slot::Local(i) => {
                if !self.locals[i].live {
                    return Err(Error::DeadHandle);
                }
                let (outcome, collapsed) = match forced {
                    None => measure_qubit(&self.locals[i].state, &mut self.rng),
                    Some(o) => {
                        let p = match o {
                            Polarization::H => self.locals[i].state.amp_h().norm_sqr(),
                            Polarization::V => self.locals[i].state.amp_v().norm_sqr(),
                        };
                        if p <= f64::EPSILON {
                            return Err(Error::ZeroProbabilityBranch { outcome: o.to_string() });
                        }
                        (o, if o == Polarization::H { PureQubit::h() } else { PureQubit::v() })
                    }
                };
                self.locals[i].state = collapsed;
                outcome
            }
            half @ (Slot::EprA | Slot::EprB) => {
                let PairState::Shared(state) = &self.pair else {
                    return Err(Error::DeadHandle);
                };
                // orient so the measured half is the "A" slot of the helper
                let oriented = if half == Slot::EprA {
                    *state
                } else {
                    swap_subsystems(state)
                };
                let (outcome, residual) = match forced {
                    None => measure_subsystem_a(&oriented, &mut self.rng),
                    Some(o) => (o, measure_subsystem_a_forced(&oriented, o)?),
                };
                let live_half = if half == Slot::EprA { Slot::EprB } else { Slot::EprA };
                self.pair = PairState::Collapsed { live_half, residual };
                outcome
            }
        };
        self.transcript.push(
            Some(actor),
            EventKind::Measure {
                target_owner: handle.owner,
                outcome,
                forced: forced.is_some(),
            },
        );
        Ok(outcome)
    }

    /// Bell-basis measurement on a party's local photon and their half of
    /// the shared pair. The other half collapses accordingly.
    pub fn bell_measure(
        &mut self,
        actor: PartyId,
        local: QubitHandle,
        epr_half: QubitHandle,
    ) -> Result<BellOutcome> {
        self.bell_measure_impl(actor, local, epr_half, None)
    }

    /// Forced-branch variant of [`Session::bell_measure`].
    pub fn bell_measure_forced(
        &mut self,
        actor: PartyId,
        local: QubitHandle,
        epr_half: QubitHandle,
        outcome: BellOutcome,
    ) -> Result<BellOutcome> {
        self.bell_measure_impl(actor, local, epr_half, Some(outcome))
    }

    fn bell_measure_impl(
        &mut self,
        actor: PartyId,
        local: QubitHandle,
        epr_half: QubitHandle,
        forced: Option<BellOutcome>,
    ) -> Result<BellOutcome> {
        self.check_access(actor, local)?;
        self.check_access(actor, epr_half)?;
        let Slot::Local(i) = local.slot else {
            return Err(Error::DeadHandle);
        };
        if !self.locals[i].live {
            return Err(Error::DeadHandle);
        }
        let PairState::Shared(pair) = &self.pair else {
            return Err(Error::NoEntangledPair);
        };
        // orient the pair so the measured half couples to the local photon
        let oriented = if epr_half.slot == Slot::EprA {
            *pair
        } else {
            swap_subsystems(pair)
        };
        let input = self.locals[i].state;
        let (outcome, residual) = match forced {
            None => bell_measure_with_ancilla(&input, &oriented, &mut self.rng),
            Some(o) => {
                let (residual, _) = bell_measure_with_ancilla_forced(&input, &oriented, o)?;
                (o, residual)
            }
        };
        self.locals[i].live = false;
        let live_half = if epr_half.slot == Slot::EprA { Slot::EprB } else { Slot::EprA };
        self.pair = PairState::Collapsed { live_half, residual };
        self.transcript.push(
            Some(actor),
            EventKind::BellMeasure {
                target_owner: actor,
                outcome,
                forced: forced.is_some(),
            },
        );
        Ok(outcome)
    }

    /// Probability that measuring the given EPR half yields |H⟩ right now.
    pub fn prob_h(&self, handle: QubitHandle) -> Result<f64> {
        match handle.slot {
            Slot::Local(i) => Ok(self.locals[i].state.amp_h().norm_sqr()),
            half @ (Slot::EprA | Slot::EprB) => match &self.pair {
                PairState::Shared(state) => {
                    let oriented = if half == Slot::EprA { *state } else { swap_subsystems(state) };
                    Ok(prob_subsystem_a_h(&oriented))
                }
                PairState::Collapsed { live_half, residual } if *live_half == half => {
                    Ok(residual.amp_h().norm_sqr())
                }
                _ => Err(Error::DeadHandle),
            },
        }
    }

    /// Simulator introspection: the current pure state of a qubit that is
    /// no longer entangled. Not a physical operation; used to report
    /// fidelities without extra measurements.
    pub fn peek(&self, handle: QubitHandle) -> Result<PureQubit> {
        match handle.slot {
            Slot::Local(i) => {
                if !self.locals[i].live {
                    return Err(Error::DeadHandle);
                }
                Ok(self.locals[i].state)
            }
            half @ (Slot::EprA | Slot::EprB) => match &self.pair {
                PairState::Collapsed { live_half, residual } if *live_half == half => Ok(*residual),
                PairState::Shared(_) => Err(Error::NoEntangledPair),
                _ => Err(Error::DeadHandle),
            },
        }
    }

    /// The joint state of a still-shared pair, for analytic cross-checks.
    pub fn shared_pair(&self) -> Result<TwoQubitState> {
        match &self.pair {
            PairState::Shared(state) => Ok(*state),
            _ => Err(Error::NoEntangledPair),
        }
    }
}

/// Exchange the two tensor slots of a two-photon state.
fn swap_subsystems(state: &TwoQubitState) -> TwoQubitState {
    let a = state.amplitudes();
    TwoQubitState::new([a[0], a[2], a[1], a[3]]).expect("permutation preserves the norm")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_session_is_empty() {
        let s = Session::new(Seed(0));
        assert_eq!(s.ledger(), ResourceLedger::default());
        assert!(s.transcript().events.is_empty());
        assert_eq!(s.transcript().render(), "# seed 0\n");
    }

    #[test]
    fn epr_distribution_counts_ebits() {
        let mut s = Session::new(Seed(1));
        s.distribute_epr();
        assert_eq!(s.ledger().ebits_consumed, 1);
        for _ in 0..4 {
            s.distribute_epr();
        }
        assert_eq!(s.ledger().ebits_consumed, 5);
    }

    #[test]
    fn locality_is_enforced_at_call_time() {
        let mut s = Session::new(Seed(2));
        let (_, b_half) = s.distribute_epr();
        let err = s.apply_unitary(PartyId::Alice, b_half, &Unitary2::sigma_z(), GateLabel::SigmaZ);
        assert_eq!(
            err,
            Err(Error::AccessViolation { party: PartyId::Alice, owner: PartyId::Bob })
        );
    }

    #[test]
    fn classical_bits_are_counted_per_direction() {
        let mut s = Session::new(Seed(3));
        assert!(s.send_classical_bit(PartyId::Alice, true));
        assert!(!s.send_classical_bit(PartyId::Bob, false));
        let ledger = s.ledger();
        assert_eq!(ledger.cbits_alice_to_bob, 1);
        assert_eq!(ledger.cbits_bob_to_alice, 1);
    }

    #[test]
    fn measuring_one_half_leaves_the_other_usable() {
        let mut s = Session::new(Seed(4));
        let (a, b) = s.distribute_epr();
        let outcome = s.measure(PartyId::Alice, a).unwrap();
        // singlet: Bob's photon is the opposite polarization
        let bob = s.peek(b).unwrap();
        match outcome {
            Polarization::H => assert!(bob.amp_v().norm() > 0.999),
            Polarization::V => assert!(bob.amp_h().norm() > 0.999),
        }
        // the measured half is dead now
        assert_eq!(s.measure(PartyId::Alice, a), Err(Error::DeadHandle));
        // Bob can still rotate his half
        assert!(s.apply_unitary(PartyId::Bob, b, &Unitary2::sigma_x(), GateLabel::SigmaX).is_ok());
    }

    #[test]
    fn replay_determinism_of_transcripts() {
        let run = |seed: u64| {
            let mut s = Session::new(Seed(seed));
            let (a, b) = s.distribute_epr();
            s.apply_unitary(
                PartyId::Alice,
                a,
                &Unitary2::su2(0.6, num_complex::Complex64::new(0.8, 0.0)).unwrap(),
                GateLabel::Su2Dagger { alpha: 0.6, beta_re: 0.8, beta_im: 0.0 },
            )
            .unwrap();
            let m = s.measure(PartyId::Alice, a).unwrap();
            s.send_classical_bit(PartyId::Alice, m == Polarization::V);
            s.apply_correction(PartyId::Bob, b, &Unitary2::i_sigma_y(), GateLabel::ISigmaY)
                .unwrap();
            s.transcript().render()
        };
        assert_eq!(run(77), run(77));
    }

    #[test]
    fn locality_report_accepts_canonical_runs_and_rejects_forgeries() {
        let mut s = Session::new(Seed(5));
        let (a, b) = s.distribute_epr();
        let m = s.measure(PartyId::Alice, a).unwrap();
        s.send_classical_bit(PartyId::Alice, m == Polarization::V);
        s.apply_correction(PartyId::Bob, b, &Unitary2::identity(), GateLabel::Identity).unwrap();
        assert!(enforce_locality(s.transcript()).ok);

        // forged: correction before the classical message arrives
        let mut t = Transcript::new(Seed(0));
        t.push(None, EventKind::DistributeEpr);
        t.push(
            Some(PartyId::Bob),
            EventKind::Correction { target_owner: PartyId::Bob, gate: GateLabel::SigmaZ },
        );
        let report = enforce_locality(&t);
        assert!(!report.ok);
        assert_eq!(report.first_violation.as_ref().unwrap().0, 1);

        // forged: Alice acting on Bob's half
        let mut t = Transcript::new(Seed(0));
        t.push(None, EventKind::DistributeEpr);
        t.push(
            Some(PartyId::Alice),
            EventKind::LocalUnitary { target_owner: PartyId::Bob, gate: GateLabel::SigmaX },
        );
        let report = enforce_locality(&t);
        assert!(!report.ok);
        assert_eq!(report.first_violation.as_ref().unwrap().0, 1);
    }

    #[test]
    fn forced_measurement_marks_the_event() {
        let mut s = Session::new(Seed(6));
        let (a, _) = s.distribute_epr();
        s.measure_forced(PartyId::Alice, a, Polarization::H).unwrap();
        let rendered = s.transcript().render();
        assert!(rendered.contains("(forced)"));
    }
}
