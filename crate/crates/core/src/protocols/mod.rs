//! The protocols under study and their no-go checks.
//!
//! * [`singlet`] — the shared EPR resource and its invariance identities.
//! * [`rsp`] — exact remote state preparation of great-circle photons with
//!   one ebit and one classical bit, plus the arbitrary-state failure mode.
//! * [`rsm`] — remote simulation of projective and POVM measurement
//!   statistics by conditionally flipping the apparatus.
//! * [`joint`] — two-photon measurement devices in the (r, s, t)
//!   parameterization: why remote joint statistics cannot be equalized in
//!   general, and the exact fix when the second photon is known.
//! * [`teleport`] — the standard teleportation baseline for resource
//!   comparison (one ebit, two classical bits).
//! * [`nogo`] — the universal-NOT map and its Choi-negativity certificate.

pub mod joint;
pub mod nogo;
pub mod rsm;
pub mod rsp;
pub mod singlet;
pub mod teleport;

pub use joint::{
    equalize_known_state, equalize_literal, joint_discrepancy, joint_probability,
    sign_flip_deviations, EqualizationCertificate, JointOperator,
};
pub use nogo::{complement_map, complement_state, universal_not_choi, ChoiMatrix};
pub use rsm::{projective_probability, rsm_povm, rsm_projective, PovmSet, ProjectiveBranch};
pub use rsp::{validate_ensemble, Correction, EnsembleKind, RspRunResult};
pub use singlet::{check_evolution_deevolution, check_singlet_invariance, epr_singlet};
pub use teleport::{correction_for, PauliCorrection, TeleportResult};
