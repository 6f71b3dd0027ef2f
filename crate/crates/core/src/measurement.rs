//! Joint basis measurements on designated qubits: Bell/GHZ projectors,
//! conditional post-measurement states, and the canonical Pauli corrections
//! that map every outcome to the outcome-1 form for the state families in
//! scope.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{check_qubit_set, sigma_x, sigma_z, CMatrix, DensityMatrix, Ket, C_ZERO};
use crate::states::{bell_ket, ghz_ket, ghz_pattern};

/// Outcomes with probability below this floor carry no conditional state.
pub const ZERO_PROBABILITY_TOL: f64 = 1e-12;

/// The joint measurement basis: the two-qubit Bell basis or the n-qubit GHZ
/// basis. The two coincide for two measured qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Bell,
    Ghz,
}

impl BasisKind {
    fn check_arity(self, k: usize) -> Result<()> {
        match self {
            BasisKind::Bell if k != 2 => Err(Error::invalid(format!(
                "Bell measurements act on exactly 2 qubits, got {k}"
            ))),
            BasisKind::Ghz if k < 2 => Err(Error::invalid(format!(
                "GHZ measurements act on at least 2 qubits, got {k}"
            ))),
            _ => Ok(()),
        }
    }

    fn ket(self, k: usize, index: usize) -> Result<Ket> {
        self.check_arity(k)?;
        match self {
            BasisKind::Bell => bell_ket(index),
            BasisKind::Ghz => ghz_ket(k, index),
        }
    }
}

/// Rank-1 projector onto one basis element, tagged with its 1-based label.
#[derive(Debug, Clone)]
pub struct BasisProjector {
    pub index: usize,
    pub projector: CMatrix,
}

/// All 2^k projectors of the requested basis on k qubits.
pub fn basis_projectors(kind: BasisKind, k: usize) -> Result<Vec<BasisProjector>> {
    kind.check_arity(k)?;
    (1..=(1usize << k))
        .map(|index| {
            Ok(BasisProjector {
                index,
                projector: kind.ket(k, index)?.projector().entries().clone(),
            })
        })
        .collect()
}

/// One projective outcome: its label, probability, and the conditional state
/// of the unmeasured qubits (in their original relative order).
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub index: usize,
    pub probability: f64,
    pub conditional_state: DensityMatrix,
}

/// Positions (bit offsets from the left) used to rebuild a full basis index
/// from a measured-qubit pattern and a rest pattern.
fn expand(pattern: usize, positions: &[usize], n: usize) -> usize {
    positions
        .iter()
        .enumerate()
        .map(|(k, &q)| ((pattern >> (positions.len() - 1 - k)) & 1) << (n - 1 - q))
        .sum()
}

/// Partial projection ⟨ψ|_Q ρ |ψ⟩_Q onto a ket on the measured qubits.
/// Returns the unnormalized conditional block on the remaining qubits; its
/// trace is the outcome probability.
fn project_onto_ket(rho: &DensityMatrix, qubits: &[usize], ket: &Ket) -> (f64, CMatrix) {
    let n = rho.n_qubits();
    let rest: Vec<usize> = (0..n).filter(|q| !qubits.contains(q)).collect();
    let rest_dim = 1usize << rest.len();
    let meas_dim = ket.dim();
    let amps = ket.amplitudes();

    let mut out = CMatrix::zeros(rest_dim, rest_dim);
    for s in 0..meas_dim {
        if amps[s] == C_ZERO {
            continue;
        }
        let row_base = expand(s, qubits, n);
        for sp in 0..meas_dim {
            if amps[sp] == C_ZERO {
                continue;
            }
            let col_base = expand(sp, qubits, n);
            let w = amps[s].conj() * amps[sp];
            for r in 0..rest_dim {
                let row = row_base | expand(r, &rest, n);
                for c in 0..rest_dim {
                    let col = col_base | expand(c, &rest, n);
                    out[(r, c)] += w * rho.entry(row, col);
                }
            }
        }
    }
    let prob = out.diagonal().sum().re;
    (prob, out)
}

/// Projects `rho` onto basis element `outcome` of the given kind measured on
/// `qubits`, removing the measured qubits.
///
/// The probability equals tr((I⊗P)ρ) with P embedded on the measured qubits,
/// and the conditional state is the measured-qubit partial trace of
/// (I⊗P)ρ(I⊗P)/p. Outcomes with probability below
/// [`ZERO_PROBABILITY_TOL`] are an error.
pub fn measure(
    rho: &DensityMatrix,
    qubits: &[usize],
    kind: BasisKind,
    outcome: usize,
) -> Result<MeasurementOutcome> {
    check_qubit_set(qubits, rho.n_qubits())?;
    if qubits.len() == rho.n_qubits() {
        return Err(Error::invalid("at least one qubit must remain unmeasured"));
    }
    let ket = kind.ket(qubits.len(), outcome)?;
    let (probability, mut block) = project_onto_ket(rho, qubits, &ket);
    if probability < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbabilityOutcome);
    }
    block /= Complex64::new(probability, 0.0);
    Ok(MeasurementOutcome {
        index: outcome,
        probability,
        conditional_state: DensityMatrix::from_raw(rho.n_qubits() - qubits.len(), block),
    })
}

/// Probability of every outcome of the measurement, in label order.
pub fn outcome_probabilities(
    rho: &DensityMatrix,
    qubits: &[usize],
    kind: BasisKind,
) -> Result<Vec<f64>> {
    check_qubit_set(qubits, rho.n_qubits())?;
    kind.check_arity(qubits.len())?;
    (1..=(1usize << qubits.len()))
        .map(|outcome| {
            let ket = kind.ket(qubits.len(), outcome)?;
            Ok(project_onto_ket(rho, qubits, &ket).0)
        })
        .collect()
}

/// Applies the canonical Pauli correction that maps the conditional state of
/// `outcome` to the outcome-1 form, for the parent families in scope.
///
/// The corrected state is grouped into `n_parents` blocks of equal size, one
/// per swapped parent. Writing the outcome's basis element as
/// (|s⟩ ± |s̄⟩)/√2 with the representative s of leading bit 0, the correction
/// applies σ_x to every remaining qubit of each parent whose designated bit
/// in s is 1, and σ_z to the first remaining qubit when the sign is −.
pub fn local_correction(
    state: &DensityMatrix,
    kind: BasisKind,
    outcome: usize,
    n_parents: usize,
) -> Result<DensityMatrix> {
    kind.check_arity(n_parents)?;
    let max = 1usize << n_parents;
    if !(1..=max).contains(&outcome) {
        return Err(Error::OutcomeOutOfRange {
            index: outcome,
            max,
        });
    }
    if !state.n_qubits().is_multiple_of(n_parents) {
        return Err(Error::invalid(format!(
            "{}-qubit state does not split into {} parents",
            state.n_qubits(),
            n_parents
        )));
    }
    let group = state.n_qubits() / n_parents;
    let (s, sign) = ghz_pattern(n_parents, outcome);

    let mut corrected = state.clone();
    for parent in 0..n_parents {
        if (s >> (n_parents - 1 - parent)) & 1 == 1 {
            for q in parent * group..(parent + 1) * group {
                corrected = corrected.apply_one_qubit(q, &sigma_x())?;
            }
        }
    }
    if sign < 0.0 {
        corrected = corrected.apply_one_qubit(0, &sigma_z())?;
    }
    Ok(corrected)
}
