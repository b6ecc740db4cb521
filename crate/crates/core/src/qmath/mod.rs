//! Exact small-dimension complex linear algebra, Poincaré-sphere
//! conversions, and seeded measurement sampling.
//!
//! Everything here is dense and fixed-size (dimensions 2 and 4); the
//! protocols never need more. All values are immutable after construction;
//! the seeded random stream is the only stateful object.

pub mod bloch;
pub mod density;
pub mod matrix;
pub mod measure;
pub mod rng;
pub mod state;
pub mod unitary;

pub use bloch::{bloch_from_density, bloch_from_state, density_from_bloch, state_from_bloch, PoincareVector};
pub use density::{DensityMatrix, Subsystem};
pub use matrix::{kron, pauli, Amplitude, CMatrix};
pub use measure::{
    bell_measure_with_ancilla, bell_measure_with_ancilla_forced, bell_state, measure_along,
    measure_qubit, measure_subsystem_a, measure_subsystem_a_forced, prob_subsystem_a_h,
    BellOutcome, Polarization, Sign,
};
pub use rng::{ProtocolRng, Seed};
pub use state::{fidelity, fidelity_two_qubit, inner, inner_two_qubit, tensor_states, PureQubit, TwoQubitState};
pub use unitary::Unitary2;

/// Tolerance for identities that are exact up to float rounding
/// (unitarity, Hermiticity, trace normalization, analytic probabilities).
pub const ATOL_ALGEBRAIC: f64 = 1e-12;

/// Tolerance for round trips through transcendental functions
/// (angle parameterizations, fidelity targets after corrections).
pub const ATOL_ROUNDTRIP: f64 = 1e-9;

/// Slack below zero allowed for eigenvalues of positive-semidefinite
/// operators (density matrices, measurement effects).
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
