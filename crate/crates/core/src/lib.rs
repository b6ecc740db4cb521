//! Deterministic simulator and verification suite for two-party quantum
//! communication protocols over photon polarization qubits.
//!
//! The crate is organized in four layers:
//!
//! * [`qmath`] — exact small-dimension complex linear algebra, state/Poincaré
//!   conversions and seeded measurement sampling.
//! * [`engine`] — two-party session orchestration: an entanglement source and
//!   a classical channel that count resources, plus an event transcript.
//! * [`protocols`] — remote state preparation (RSP), remote state measurement
//!   (RSM) via projective and POVM statistics, the joint-measurement
//!   (im)possibility analysis, a teleportation baseline, and the
//!   universal-NOT Choi-negativity check.
//! * [`harness`] — Monte Carlo experiment runner comparing empirical
//!   frequencies against the analytic probabilities, with structured reports.

pub mod engine;
pub mod error;
pub mod harness;
pub mod protocols;
pub mod qmath;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
