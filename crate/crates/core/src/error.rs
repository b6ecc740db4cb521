//! Crate-wide error type.

use crate::engine::PartyId;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("amplitudes are not normalized: |aH|^2 + |aV|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("expected a unit Poincare vector, got norm {norm}")]
    NotUnitVector { norm: f64 },

    #[error("Poincare vector norm {norm} exceeds the unit ball")]
    OutsideUnitBall { norm: f64 },

    #[error("matrix is not unitary: max |U^dag U - I| entry = {deviation}")]
    NotUnitary { deviation: f64 },

    #[error("not a valid density matrix: {reason}")]
    InvalidDensityMatrix { reason: String },

    #[error("not Hermitian: max |M - M^dag| entry = {deviation}")]
    NotHermitian { deviation: f64 },

    #[error("state does not belong to the declared {kind} ensemble: {reason}")]
    EnsembleViolation { kind: &'static str, reason: String },

    #[error("POVM is not complete: {reason}")]
    IncompletePovm { reason: String },

    #[error("operator is not a valid measurement effect: {reason}")]
    InvalidEffect { reason: String },

    #[error("{party} cannot act on a qubit owned by {owner}")]
    AccessViolation { party: PartyId, owner: PartyId },

    #[error("qubit handle is no longer live (already measured or consumed)")]
    DeadHandle,

    #[error("no entangled pair has been distributed in this session")]
    NoEntangledPair,

    #[error("cannot force outcome {outcome}: branch probability is zero")]
    ZeroProbabilityBranch { outcome: String },

    #[error("shots must be >= 1")]
    NoShots,

    #[error("invalid experiment parameters: {reason}")]
    InvalidExperiment { reason: String },
}
