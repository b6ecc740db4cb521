//! Remote state measurement: simulating measurement statistics on a photon
//! Bob may hold only as its complement.
//!
//! After the unprotected half of an RSP run Bob holds ρ_Ψ = (I + n·σ)/2 or
//! ρ_Ψ⊥ = (I − n·σ)/2 with equal probability, and the classical bit tells
//! him which. He cannot flip n — that would be the universal NOT — but he
//! can flip his own apparatus: reversing b (projective) or every f_μ (POVM)
//! makes the complement branch reproduce the target statistics exactly.

use rand::Rng;

use crate::qmath::{DensityMatrix, PoincareVector, Polarization, PureQubit, Sign, ATOL_ALGEBRAIC};
use crate::{Error, Result};

/// (1 ± b·n)/2 — outcome probability of the projector P_±(b) on the state
/// with Bloch vector n. The apparatus direction b must be unit; n may lie
/// anywhere in the ball.
pub fn projective_probability(b: &PoincareVector, n: &PoincareVector, sign: Sign) -> Result<f64> {
    if !b.is_unit() {
        return Err(Error::NotUnitVector { norm: b.norm() });
    }
    let dot = b.dot(n);
    Ok(match sign {
        Sign::Plus => 0.5 * (1.0 + dot),
        Sign::Minus => 0.5 * (1.0 - dot),
    })
}

/// Bob's effective apparatus and outcome distribution for one branch of the
/// protocol. In both branches the probabilities equal (1 ± b·n)/2 exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveBranch {
    /// What Bob actually measures: b if he holds ρ_Ψ, −b if he holds ρ_Ψ⊥.
    pub effective_b: PoincareVector,
    /// The Bloch vector of the state Bob actually holds in this branch.
    pub held_n: PoincareVector,
    pub p_plus: f64,
    pub p_minus: f64,
}

/// Apply the b-flip rule for the branch selected by Alice's outcome
/// (V: Bob holds ρ_Ψ; H: Bob holds ρ_Ψ⊥ and reverses b).
pub fn rsm_projective(
    target_n: &PoincareVector,
    b: &PoincareVector,
    alice_outcome: Polarization,
) -> Result<ProjectiveBranch> {
    if !target_n.is_unit() {
        return Err(Error::NotUnitVector { norm: target_n.norm() });
    }
    if !b.is_unit() {
        return Err(Error::NotUnitVector { norm: b.norm() });
    }
    let (held_n, effective_b) = match alice_outcome {
        Polarization::V => (*target_n, *b),
        Polarization::H => (target_n.flipped(), b.flipped()),
    };
    // (−b)·(−n) is bitwise b·n, so the two branches agree exactly
    let p_plus = projective_probability(&effective_b, &held_n, Sign::Plus)?;
    let p_minus = projective_probability(&effective_b, &held_n, Sign::Minus)?;
    Ok(ProjectiveBranch { effective_b, held_n, p_plus, p_minus })
}

/// A complete POVM with elements F_μ = (|f_μ| I + f_μ·σ)/2. The element
/// weight is the vector's own norm, so positivity holds by construction;
/// completeness (Σ|f_μ| = 2 and Σ f_μ = 0) is validated.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmSet {
    elements: Vec<PoincareVector>,
}

impl PovmSet {
    pub fn new(elements: Vec<PoincareVector>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::IncompletePovm { reason: "no elements".into() });
        }
        let weight_sum: f64 = elements.iter().map(|f| f.norm()).sum();
        if (weight_sum - 2.0).abs() > ATOL_ALGEBRAIC {
            return Err(Error::IncompletePovm {
                reason: format!("sum of |f_mu| is {weight_sum}, expected 2"),
            });
        }
        let (sx, sy, sz) = elements.iter().fold((0.0, 0.0, 0.0), |(x, y, z), f| {
            (x + f.x, y + f.y, z + f.z)
        });
        let resultant = (sx * sx + sy * sy + sz * sz).sqrt();
        if resultant > ATOL_ALGEBRAIC {
            return Err(Error::IncompletePovm {
                reason: format!("sum of f_mu has norm {resultant}, expected 0"),
            });
        }
        Ok(PovmSet { elements })
    }

    /// The symmetric three-outcome POVM: three coplanar vectors of weight
    /// 2/3 at 120° in the x–y plane, the first along +x.
    pub fn trine() -> Self {
        let w = 2.0 / 3.0;
        let elements = (0..3)
            .map(|k| {
                let angle = k as f64 * std::f64::consts::TAU / 3.0;
                PoincareVector::new(w * angle.cos(), w * angle.sin(), 0.0)
                    .expect("trine vectors fit the ball")
            })
            .collect();
        PovmSet { elements }
    }

    /// The two-element projective measurement along a unit axis, as a POVM:
    /// f = {+axis, −axis}, both of weight 1.
    pub fn projective(axis: &PoincareVector) -> Result<Self> {
        if !axis.is_unit() {
            return Err(Error::NotUnitVector { norm: axis.norm() });
        }
        Ok(PovmSet { elements: vec![*axis, axis.flipped()] })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PoincareVector] {
        &self.elements
    }

    pub fn weight(&self, mu: usize) -> f64 {
        self.elements[mu].norm()
    }

    /// The flipped set {−f_μ}. Weights are untouched and both completeness
    /// sums are preserved, so the result is again a valid POVM.
    pub fn flipped(&self) -> Self {
        PovmSet { elements: self.elements.iter().map(|f| f.flipped()).collect() }
    }

    /// F_μ as a raw 2×2 matrix.
    pub fn effect_matrix(&self, mu: usize) -> crate::qmath::CMatrix<2> {
        use crate::qmath::matrix::pauli;
        use num_complex::Complex64;
        let f = &self.elements[mu];
        (pauli::ID.scale(Complex64::new(f.norm(), 0.0)) + pauli::dot(f.components()))
            .scale(Complex64::new(0.5, 0.0))
    }

    /// Closed-form outcome distribution (|f_μ| + f_μ·n)/2 on Bloch vector n.
    pub fn distribution(&self, n: &PoincareVector) -> Vec<f64> {
        self.elements
            .iter()
            .map(|f| 0.5 * (f.norm() + f.dot(n)))
            .collect()
    }

    /// Matrix-trace route: tr(F_μ ρ) for every μ. Agrees with
    /// [`PovmSet::distribution`] to 1e-12; kept separate so the two can
    /// cross-check each other.
    pub fn distribution_by_trace(&self, rho: &DensityMatrix<2>) -> Vec<f64> {
        (0..self.len()).map(|mu| rho.expectation(&self.effect_matrix(mu))).collect()
    }

    /// Sample one outcome from tr(F_μ ρ).
    pub fn sample(&self, rho: &DensityMatrix<2>, rng: &mut impl Rng) -> usize {
        let probs = self.distribution_by_trace(rho);
        let u = rng.random::<f64>();
        let mut acc = 0.0;
        for (mu, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return mu;
            }
        }
        self.len() - 1
    }
}

/// The f_μ-flip rule. Returns the outcome distribution Bob observes in the
/// branch selected by Alice's outcome; identical across branches by
/// construction. Sums to 1 within 1e-12.
pub fn rsm_povm(
    target_n: &PoincareVector,
    povm: &PovmSet,
    alice_outcome: Polarization,
) -> Result<Vec<f64>> {
    if !target_n.is_unit() {
        return Err(Error::NotUnitVector { norm: target_n.norm() });
    }
    let (held_n, apparatus) = match alice_outcome {
        Polarization::V => (*target_n, povm.clone()),
        Polarization::H => (target_n.flipped(), povm.flipped()),
    };
    Ok(apparatus.distribution(&held_n))
}

/// The state Bob physically holds in a given branch.
pub fn held_state(target: &PureQubit, alice_outcome: Polarization) -> PureQubit {
    match alice_outcome {
        Polarization::V => *target,
        Polarization::H => target.orthogonal(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{bloch_from_state, density_from_bloch, Seed};

    fn unit(theta: f64, phi: f64) -> PoincareVector {
        PoincareVector::from_angles(theta, phi)
    }

    #[test]
    fn aligned_and_orthogonal_apparatus() {
        let n = unit(0.4, 1.0);
        assert!((projective_probability(&n, &n, Sign::Plus).unwrap() - 1.0).abs() < 1e-12);
        // b ⊥ n
        let b = unit(0.4 + std::f64::consts::FRAC_PI_2, 1.0);
        assert!((projective_probability(&b, &n, Sign::Plus).unwrap() - 0.5).abs() < 1e-9);
        assert!((projective_probability(&b, &n, Sign::Minus).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn projective_probability_matches_matrix_trace() {
        use crate::qmath::matrix::{pauli, CMatrix};
        use num_complex::Complex64;
        let mut rng = Seed(201).rng();
        for _ in 0..200 {
            let b = unit(
                rng.random::<f64>() * std::f64::consts::PI,
                rng.random::<f64>() * std::f64::consts::TAU,
            );
            let n = unit(
                rng.random::<f64>() * std::f64::consts::PI,
                rng.random::<f64>() * std::f64::consts::TAU,
            );
            let rho = density_from_bloch(&n);
            for sign in [Sign::Plus, Sign::Minus] {
                let proj = match sign {
                    Sign::Plus => (CMatrix::<2>::identity() + pauli::dot(b.components())),
                    Sign::Minus => (CMatrix::<2>::identity() - pauli::dot(b.components())),
                }
                .scale(Complex64::new(0.5, 0.0));
                let trace_route = rho.expectation(&proj);
                let formula = projective_probability(&b, &n, sign).unwrap();
                assert!((trace_route - formula).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_unit_apparatus_or_target() {
        let short = PoincareVector::new(0.5, 0.0, 0.0).unwrap();
        let n = unit(1.0, 0.0);
        assert!(projective_probability(&short, &n, Sign::Plus).is_err());
        assert!(rsm_projective(&short, &n, Polarization::V).is_err());
        assert!(rsm_projective(&n, &short, Polarization::V).is_err());
        let degenerate = PoincareVector::new(0.0, 0.0, 0.0).unwrap();
        assert!(rsm_projective(&degenerate, &n, Polarization::V).is_err());
    }

    #[test]
    fn flip_rule_aligned_case_gives_certainty() {
        // outcome H with b = n: effective apparatus is −n, held state is −n,
        // so P₊ = 1 exactly as the held-state formula demands
        let n = unit(1.1, 2.0);
        let branch = rsm_projective(&n, &n, Polarization::H).unwrap();
        assert_eq!(branch.effective_b, n.flipped());
        assert!((branch.p_plus - 1.0).abs() < 1e-12);
        assert!(branch.p_minus.abs() < 1e-12);
    }

    #[test]
    fn branch_distributions_are_bitwise_equal_on_a_grid() {
        let steps = 20;
        let mut worst: f64 = 0.0;
        for i in 0..steps {
            for j in 0..steps {
                let b = unit(
                    (i as f64 + 0.5) * std::f64::consts::PI / steps as f64,
                    (j as f64 + 0.5) * std::f64::consts::TAU / steps as f64,
                );
                for k in 0..steps {
                    let n = unit(
                        (k as f64 + 0.5) * std::f64::consts::PI / steps as f64,
                        (i as f64 * 0.7 + 0.3) % std::f64::consts::TAU,
                    );
                    let held = rsm_projective(&n, &b, Polarization::V).unwrap();
                    let flipped = rsm_projective(&n, &b, Polarization::H).unwrap();
                    worst = worst
                        .max((held.p_plus - flipped.p_plus).abs())
                        .max((held.p_minus - flipped.p_minus).abs());
                }
            }
        }
        assert_eq!(worst, 0.0, "flip rule must be exact, got deviation {worst}");
    }

    #[test]
    fn trine_povm_distribution() {
        let povm = PovmSet::trine();
        let n = PoincareVector::unit(1.0, 0.0, 0.0).unwrap();
        let dist = rsm_povm(&n, &povm, Polarization::V).unwrap();
        assert!((dist[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((dist[1] - 1.0 / 6.0).abs() < 1e-12);
        assert!((dist[2] - 1.0 / 6.0).abs() < 1e-12);
        let total: f64 = dist.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projective_as_povm_reduces_to_projector_formula() {
        let z = PoincareVector::unit(0.0, 0.0, 1.0).unwrap();
        let povm = PovmSet::projective(&z).unwrap();
        let dist = rsm_povm(&z, &povm, Polarization::V).unwrap();
        assert!((dist[0] - 1.0).abs() < 1e-12);
        assert!(dist[1].abs() < 1e-12);
    }

    #[test]
    fn completeness_is_validated_and_preserved_by_flips() {
        // incomplete: weights sum to 2 but vectors do not cancel
        let bad = PovmSet::new(vec![
            PoincareVector::new(1.0, 0.0, 0.0).unwrap(),
            PoincareVector::new(0.0, 1.0, 0.0).unwrap(),
        ]);
        assert!(matches!(bad, Err(Error::IncompletePovm { .. })));
        // weights off
        let bad = PovmSet::new(vec![
            PoincareVector::new(0.5, 0.0, 0.0).unwrap(),
            PoincareVector::new(-0.5, 0.0, 0.0).unwrap(),
        ]);
        assert!(matches!(bad, Err(Error::IncompletePovm { .. })));

        let flipped = PovmSet::trine().flipped();
        // re-validating the flipped set succeeds
        assert!(PovmSet::new(flipped.elements().to_vec()).is_ok());
    }

    pub(crate) fn random_complete_povm(rng: &mut impl Rng, outcomes: usize) -> PovmSet {
        loop {
            let raw: Vec<[f64; 3]> = (0..outcomes)
                .map(|_| std::array::from_fn(|_| rng.random::<f64>() * 2.0 - 1.0))
                .collect();
            let mean = raw.iter().fold([0.0; 3], |m, v| {
                [m[0] + v[0] / outcomes as f64, m[1] + v[1] / outcomes as f64, m[2] + v[2] / outcomes as f64]
            });
            let centered: Vec<[f64; 3]> =
                raw.iter().map(|v| [v[0] - mean[0], v[1] - mean[1], v[2] - mean[2]]).collect();
            let total: f64 = centered
                .iter()
                .map(|v| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt())
                .sum();
            if total < 1e-6 {
                continue;
            }
            let scale = 2.0 / total;
            let vectors: Vec<PoincareVector> = match centered
                .iter()
                .map(|v| PoincareVector::new(v[0] * scale, v[1] * scale, v[2] * scale))
                .collect::<Result<_>>()
            {
                Ok(v) => v,
                Err(_) => continue, // an element left the unit ball; resample
            };
            if let Ok(povm) = PovmSet::new(vectors) {
                return povm;
            }
        }
    }

    #[test]
    fn random_povms_have_identical_branch_distributions() {
        let mut rng = Seed(202).rng();
        for _ in 0..50 {
            let povm = random_complete_povm(&mut rng, 4);
            let n = unit(
                rng.random::<f64>() * std::f64::consts::PI,
                rng.random::<f64>() * std::f64::consts::TAU,
            );
            let held = rsm_povm(&n, &povm, Polarization::V).unwrap();
            let flipped = rsm_povm(&n, &povm, Polarization::H).unwrap();
            for (a, b) in held.iter().zip(flipped.iter()) {
                assert_eq!(a, b, "flip rule must be exact");
            }
            // matrix-trace oracle on the held branch
            let rho = density_from_bloch(&n);
            let trace_route = povm.distribution_by_trace(&rho);
            for (a, b) in held.iter().zip(trace_route.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
            let total: f64 = held.iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn held_state_matches_branch_bloch_vector() {
        let target = PureQubit::from_angles(0.8, 2.1);
        let n = bloch_from_state(&target);
        let perp = held_state(&target, Polarization::H);
        let flipped_n = bloch_from_state(&perp);
        assert!((flipped_n.x + n.x).abs() < 1e-12);
        assert!((flipped_n.y + n.y).abs() < 1e-12);
        assert!((flipped_n.z + n.z).abs() < 1e-12);
    }
}
