//! Chain and star entanglement-swapping networks, plus closed-form oracle
//! states for the Werner parent families.
//!
//! A chain fuses a sequence of two-qubit parents end to end with Bell
//! measurements on adjacent inner qubits. A star takes N parents of M qubits
//! each, measures one designated qubit per parent (each parent's qubit 0) in
//! the N-qubit GHZ basis, and leaves an N(M−1)-qubit state grouped by parent.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measurement::{local_correction, measure, BasisKind, ZERO_PROBABILITY_TOL};
use crate::qstate::{CMatrix, DensityMatrix};
use crate::states::{ghz_ket, werner, white_noise};

/// Network layout of a swapping experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Chain,
    Star,
}

/// How measurement outcomes are handled.
///
/// `FixedOutcome(k)` post-selects basis element k (1-based) at every
/// measurement and applies its canonical correction. `AllOutcomesCanonical`
/// mixes all outcomes weighted by probability after correcting each to the
/// canonical form; for the in-scope parent families every branch is already
/// identical, so this equals `FixedOutcome(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomePolicy {
    FixedOutcome(usize),
    AllOutcomesCanonical,
}

impl Default for OutcomePolicy {
    fn default() -> Self {
        OutcomePolicy::FixedOutcome(1)
    }
}

/// Declarative description of a swapping network.
#[derive(Debug, Clone)]
pub struct SwapConfig {
    pub topology: Topology,
    pub parents: Vec<DensityMatrix>,
    pub policy: OutcomePolicy,
}

impl SwapConfig {
    pub fn new(topology: Topology, parents: Vec<DensityMatrix>, policy: OutcomePolicy) -> Self {
        SwapConfig {
            topology,
            parents,
            policy,
        }
    }

    /// Runs the configured network and returns the swapped state.
    pub fn run(&self) -> Result<DensityMatrix> {
        match self.topology {
            Topology::Chain => chain_swap(&self.parents, self.policy),
            Topology::Star => star_swap(&self.parents, self.policy),
        }
    }
}

/// Measures `qubits` of `joint` in the given basis according to `policy`,
/// returning the corrected conditional state on the remaining qubits.
fn measure_with_policy(
    joint: &DensityMatrix,
    qubits: &[usize],
    kind: BasisKind,
    n_parents: usize,
    policy: OutcomePolicy,
) -> Result<DensityMatrix> {
    match policy {
        OutcomePolicy::FixedOutcome(k) => {
            let outcome = measure(joint, qubits, kind, k)?;
            local_correction(&outcome.conditional_state, kind, k, n_parents)
        }
        OutcomePolicy::AllOutcomesCanonical => {
            let rest = joint.n_qubits() - qubits.len();
            let dim = 1usize << rest;
            let mut mix = CMatrix::zeros(dim, dim);
            let mut total = 0.0;
            for k in 1..=(1usize << qubits.len()) {
                match measure(joint, qubits, kind, k) {
                    Ok(outcome) => {
                        let fixed =
                            local_correction(&outcome.conditional_state, kind, k, n_parents)?;
                        mix += fixed.entries() * Complex64::new(outcome.probability, 0.0);
                        total += outcome.probability;
                    }
                    Err(Error::ZeroProbabilityOutcome) => continue,
                    Err(e) => return Err(e),
                }
            }
            if total < ZERO_PROBABILITY_TOL {
                return Err(Error::ZeroProbabilityOutcome);
            }
            mix /= Complex64::new(total, 0.0);
            Ok(DensityMatrix::from_raw(rest, mix))
        }
    }
}

/// End-to-end chain swap of two-qubit parents.
///
/// Bell measurements on adjacent inner pairs are executed left to right;
/// projective measurements on disjoint pairs commute, so the order does not
/// affect the result. Returns the canonical two-qubit end-to-end state.
pub fn chain_swap(parents: &[DensityMatrix], policy: OutcomePolicy) -> Result<DensityMatrix> {
    if parents.len() < 2 {
        return Err(Error::invalid("chain swapping needs at least 2 parents"));
    }
    if let Some(bad) = parents.iter().find(|p| p.n_qubits() != 2) {
        return Err(Error::invalid(format!(
            "chain parents must be 2-qubit states, got {} qubits",
            bad.n_qubits()
        )));
    }
    let mut acc = parents[0].clone();
    for next in &parents[1..] {
        let joint = acc.tensor(next)?;
        acc = measure_with_policy(&joint, &[1, 2], BasisKind::Bell, 2, policy)?;
    }
    Ok(acc)
}

/// Star swap: one GHZ-basis measurement across each parent's qubit 0.
///
/// All parents must act on the same number of qubits M ≥ 2; the result holds
/// the N(M−1) unmeasured qubits grouped by parent.
pub fn star_swap(parents: &[DensityMatrix], policy: OutcomePolicy) -> Result<DensityMatrix> {
    let n = parents.len();
    if n < 2 {
        return Err(Error::invalid("star swapping needs at least 2 parents"));
    }
    let m = parents[0].n_qubits();
    if m < 2 {
        return Err(Error::invalid("star parents must hold at least 2 qubits"));
    }
    if parents.iter().any(|p| p.n_qubits() != m) {
        return Err(Error::invalid(
            "star parents must all have the same number of qubits",
        ));
    }
    let mut joint = parents[0].clone();
    for next in &parents[1..] {
        joint = joint.tensor(next)?;
    }
    let designated: Vec<usize> = (0..n).map(|i| i * m).collect();
    measure_with_policy(&joint, &designated, BasisKind::Ghz, n, policy)
}

/// Closed form of the chain of Werner parents: werner(p₁p₂…p_N).
pub fn oracle_chain_werner(visibilities: &[f64]) -> Result<DensityMatrix> {
    if visibilities.is_empty() {
        return Err(Error::invalid("need at least one visibility"));
    }
    werner(visibilities.iter().product())
}

/// Closed form of the three-Werner star swap conditioned on the first GHZ
/// outcome: p³|G₁⟩⟨G₁| + (1−p²) I/8 + ½p²(1−p)(|000⟩⟨000| + |111⟩⟨111|).
pub fn oracle_star3_werner(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("visibility {p} outside [0, 1]")));
    }
    let ghz = ghz_ket(3, 1)?.projector();
    let noise = white_noise(3)?;
    let mut entries = ghz.entries() * Complex64::new(p.powi(3), 0.0)
        + noise.entries() * Complex64::new(1.0 - p * p, 0.0);
    let diag = Complex64::new(0.5 * p * p * (1.0 - p), 0.0);
    entries[(0b000, 0b000)] += diag;
    entries[(0b111, 0b111)] += diag;
    Ok(DensityMatrix::from_raw(3, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::basis_projectors;
    use crate::states::bell_ket;

    #[test]
    fn chain_of_two_werner_states_is_werner_of_p_squared() {
        let p = 0.9;
        let got = chain_swap(
            &[werner(p).unwrap(), werner(p).unwrap()],
            OutcomePolicy::default(),
        )
        .unwrap();
        assert!(got.max_abs_diff(&werner(0.81).unwrap()) < 1e-12);
    }

    #[test]
    fn chain_visibilities_multiply() {
        let parents = [
            werner(0.9).unwrap(),
            werner(0.8).unwrap(),
            werner(0.7).unwrap(),
        ];
        let got = chain_swap(&parents, OutcomePolicy::default()).unwrap();
        assert!(got.max_abs_diff(&werner(0.504).unwrap()) < 1e-12);
        let oracle = oracle_chain_werner(&[0.9, 0.8, 0.7]).unwrap();
        assert!(got.max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn chain_of_pure_singlets_yields_a_bell_state() {
        let singlet = bell_ket(4).unwrap().projector();
        let projs = basis_projectors(BasisKind::Bell, 2).unwrap();
        for n in 2..=4 {
            let parents: Vec<_> = (0..n).map(|_| singlet.clone()).collect();
            let got = chain_swap(&parents, OutcomePolicy::default()).unwrap();
            let hit = projs
                .iter()
                .any(|p| crate::qstate::max_abs_diff(got.entries(), &p.projector) < 1e-12);
            assert!(hit, "chain of {n} singlets is not a Bell state");
        }
    }

    #[test]
    fn chain_oracle_equivalence_on_grid() {
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let got = chain_swap(
                &[werner(p).unwrap(), werner(p).unwrap()],
                OutcomePolicy::default(),
            )
            .unwrap();
            let want = oracle_chain_werner(&[p, p]).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn star_of_three_werner_states_matches_closed_form() {
        for p in [0.2, 0.8] {
            let w = werner(p).unwrap();
            let got = star_swap(&[w.clone(), w.clone(), w], OutcomePolicy::default()).unwrap();
            let want = oracle_star3_werner(p).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn star_oracle_equivalence_on_grid() {
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let w = werner(p).unwrap();
            let got = star_swap(&[w.clone(), w.clone(), w], OutcomePolicy::default()).unwrap();
            let want = oracle_star3_werner(p).unwrap();
            assert!(got.max_abs_diff(&want) < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn star_oracle_limits() {
        let pure = oracle_star3_werner(1.0).unwrap();
        assert!(pure.max_abs_diff(&ghz_ket(3, 1).unwrap().projector()) < 1e-15);
        let noise = oracle_star3_werner(0.0).unwrap();
        assert!(noise.max_abs_diff(&white_noise(3).unwrap()) < 1e-15);
    }

    #[test]
    fn two_parent_star_equals_one_chain_step() {
        let p = 0.73;
        let w = werner(p).unwrap();
        let got = star_swap(&[w.clone(), w], OutcomePolicy::default()).unwrap();
        assert!(got.max_abs_diff(&werner(p * p).unwrap()) < 1e-12);
    }

    #[test]
    fn all_outcomes_policy_equals_fixed_outcome_for_werner_parents() {
        let p = 0.85;
        let w = werner(p).unwrap();
        let fixed = star_swap(
            &[w.clone(), w.clone(), w.clone()],
            OutcomePolicy::FixedOutcome(1),
        )
        .unwrap();
        let mixed = star_swap(
            &[w.clone(), w.clone(), w],
            OutcomePolicy::AllOutcomesCanonical,
        )
        .unwrap();
        assert!(fixed.max_abs_diff(&mixed) < 1e-12);

        let chain_fixed = chain_swap(
            &[werner(p).unwrap(), werner(p).unwrap()],
            OutcomePolicy::FixedOutcome(1),
        )
        .unwrap();
        let chain_mixed = chain_swap(
            &[werner(p).unwrap(), werner(p).unwrap()],
            OutcomePolicy::AllOutcomesCanonical,
        )
        .unwrap();
        assert!(chain_fixed.max_abs_diff(&chain_mixed) < 1e-12);
    }

    #[test]
    fn disjoint_chain_measurements_commute() {
        // Three parents, two inner Bell measurements on original qubit pairs
        // (1,2) and (3,4): both orders give the same end-to-end state.
        let parents = [
            werner(0.9).unwrap(),
            werner(0.6).unwrap(),
            werner(0.8).unwrap(),
        ];
        let joint = parents[0]
            .tensor(&parents[1])
            .unwrap()
            .tensor(&parents[2])
            .unwrap();

        // Left measurement first: qubits (1,2), then the former (3,4) which
        // are (1,2) of the remaining [0,3,4,5] register.
        let left = measure(&joint, &[1, 2], BasisKind::Bell, 1)
            .unwrap()
            .conditional_state;
        let left_then_right = measure(&left, &[1, 2], BasisKind::Bell, 1)
            .unwrap()
            .conditional_state;

        // Right measurement first: qubits (3,4), then the original (1,2).
        let right = measure(&joint, &[3, 4], BasisKind::Bell, 1)
            .unwrap()
            .conditional_state;
        let right_then_left = measure(&right, &[1, 2], BasisKind::Bell, 1)
            .unwrap()
            .conditional_state;

        assert!(left_then_right.max_abs_diff(&right_then_left) < 1e-12);
        // And the sequential pipeline agrees with the closed form.
        assert!(left_then_right.max_abs_diff(&werner(0.9 * 0.6 * 0.8).unwrap()) < 1e-12);
    }

    #[test]
    fn config_validation() {
        let w = werner(0.5).unwrap();
        let ghz3 = crate::states::noisy_ghz(3, 0.5).unwrap();
        assert!(chain_swap(std::slice::from_ref(&w), OutcomePolicy::default()).is_err());
        assert!(chain_swap(&[w.clone(), ghz3.clone()], OutcomePolicy::default()).is_err());
        assert!(star_swap(std::slice::from_ref(&ghz3), OutcomePolicy::default()).is_err());
        assert!(star_swap(&[ghz3.clone(), w.clone()], OutcomePolicy::default()).is_err());
        let cfg = SwapConfig::new(
            Topology::Chain,
            vec![w.clone(), w],
            OutcomePolicy::default(),
        );
        assert!(cfg.run().is_ok());
    }
}
