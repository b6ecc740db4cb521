//! The EPR singlet and its two structural identities.
//!
//! The singlet (|H⟩_A|V⟩_B − |V⟩_A|H⟩_B)/√2 is invariant under any common
//! local rotation U⊗U, and rotating one half forward equals rotating the
//! other half backward: (U⊗I)|Ψ⁻⟩ = (I⊗U†)|Ψ⁻⟩. Both facts are what make
//! remote state preparation work, so they ship as runtime checks that
//! return a deviation (0 for an exact implementation, up to rounding).

use num_complex::Complex64;

use crate::qmath::matrix::pauli;
use crate::qmath::{fidelity_two_qubit, kron, PureQubit, Seed, TwoQubitState, Unitary2};

/// The shared resource: (|HV⟩ − |VH⟩)/√2.
pub fn epr_singlet() -> TwoQubitState {
    let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    TwoQubitState::new([z, r, -r, z]).expect("singlet is normalized")
}

/// 1 − |⟨Ψ⁻|(U⊗U)|Ψ⁻⟩|². Below 1e-12 for every unitary.
pub fn check_singlet_invariance(u: &Unitary2) -> f64 {
    let singlet = epr_singlet();
    let rotated = singlet.apply(&kron(u.matrix(), u.matrix()));
    1.0 - fidelity_two_qubit(&singlet, &rotated)
}

/// 1 − |overlap|² between (U⊗I)|Ψ⁻⟩ and (I⊗U†)|Ψ⁻⟩. Below 1e-12 for every
/// unitary.
pub fn check_evolution_deevolution(u: &Unitary2) -> f64 {
    let singlet = epr_singlet();
    let forward = singlet.apply(&kron(u.matrix(), &pauli::ID));
    let backward = singlet.apply(&kron(&pauli::ID, u.dagger().matrix()));
    1.0 - fidelity_two_qubit(&forward, &backward)
}

/// Worst-case deviations of both identities over `trials` seeded-random
/// SU(2) elements: (max Eq.-invariance deviation, max de-evolution deviation).
pub fn max_identity_deviations(trials: u64, seed: Seed) -> (f64, f64) {
    let mut rng = seed.rng();
    let mut worst_invariance = 0.0_f64;
    let mut worst_deevolution = 0.0_f64;
    for _ in 0..trials {
        let u = Unitary2::random_su2(&mut rng);
        worst_invariance = worst_invariance.max(check_singlet_invariance(&u));
        worst_deevolution = worst_deevolution.max(check_evolution_deevolution(&u));
    }
    (worst_invariance, worst_deevolution)
}

/// Decompose an arbitrary target as |Ψ⟩ = U(α, β)|H⟩ with α real ≥ 0.
pub fn qubit_basis_rotation(target: &PureQubit) -> Unitary2 {
    let canon = target.canonical();
    Unitary2::su2(canon.amp_h().re, canon.amp_v()).expect("canonical state is normalized")
}
