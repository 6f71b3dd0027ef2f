//! Builds swapping scenarios from command-line parameters and evaluates the
//! named nonclassicality criteria on swapped states.

use anyhow::{bail, Result};
use swapnet_core::nonclassicality::{
    eof, functional_violation, ghz_visibility, horodecki_chsh_max, mk_max_xy, ppt_min_eigenvalue,
    two_setting_tensor_max, CriterionReport, PPT_NEGATIVITY_TOL,
};
use swapnet_core::states::{noisy_ghz, werner};
use swapnet_core::swap::{chain_swap, star_swap};
use swapnet_core::{DensityMatrix, OutcomePolicy, Topology};

pub const CRITERIA: [&str; 6] = ["chsh", "mk-xy", "tensor2", "functional", "ppt", "eof"];

/// One parametrized swapping network: N parents of M qubits each, either
/// fused in a chain (M = 2) or through a single GHZ measurement (star).
#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub topology: Topology,
    pub n_parents: usize,
    pub qubits_per_parent: usize,
}

impl Scenario {
    pub fn new(topology: Topology, n_parents: usize, qubits_per_parent: usize) -> Result<Self> {
        if n_parents < 2 {
            bail!("--n must be at least 2 (got {n_parents})");
        }
        match topology {
            Topology::Chain if qubits_per_parent != 2 => {
                bail!("chain parents are two-qubit states; --m must be 2")
            }
            Topology::Star if qubits_per_parent < 2 => {
                bail!("star parents need at least 2 qubits; got --m {qubits_per_parent}")
            }
            _ => {}
        }
        Ok(Scenario {
            topology,
            n_parents,
            qubits_per_parent,
        })
    }

    pub fn label(&self, p: f64) -> String {
        format!(
            "{} n={} m={} p={}",
            match self.topology {
                Topology::Chain => "chain",
                Topology::Star => "star",
            },
            self.n_parents,
            self.qubits_per_parent,
            p
        )
    }

    /// Number of qubits of the swapped state.
    pub fn output_qubits(&self) -> usize {
        match self.topology {
            Topology::Chain => 2,
            Topology::Star => self.n_parents * (self.qubits_per_parent - 1),
        }
    }

    fn parents(&self, p: f64) -> Result<Vec<DensityMatrix>> {
        (0..self.n_parents)
            .map(|_| {
                Ok(if self.qubits_per_parent == 2 {
                    werner(p)?
                } else {
                    noisy_ghz(self.qubits_per_parent, p)?
                })
            })
            .collect()
    }

    /// Runs the network on parents of visibility `p` (first-outcome policy).
    pub fn swapped(&self, p: f64) -> Result<DensityMatrix> {
        let parents = self.parents(p)?;
        Ok(match self.topology {
            Topology::Chain => chain_swap(&parents, OutcomePolicy::default())?,
            Topology::Star => star_swap(&parents, OutcomePolicy::default())?,
        })
    }
}

/// Criteria meaningful for a swapped state of `n_qubits` qubits, in a fixed
/// reporting order.
pub fn applicable_criteria(n_qubits: usize) -> Vec<&'static str> {
    CRITERIA
        .iter()
        .copied()
        .filter(|name| criterion_applies(name, n_qubits))
        .collect()
}

fn criterion_applies(name: &str, n_qubits: usize) -> bool {
    match name {
        "chsh" | "ppt" | "eof" => n_qubits == 2,
        "tensor2" => n_qubits == 3,
        "mk-xy" | "functional" => true,
        _ => false,
    }
}

/// Evaluates one named criterion on a swapped state.
pub fn evaluate_criterion(state: &DensityMatrix, name: &str) -> Result<CriterionReport> {
    let n = state.n_qubits();
    if !CRITERIA.contains(&name) {
        bail!(
            "unknown criterion {name:?}; expected one of {}",
            CRITERIA.join(", ")
        );
    }
    if !criterion_applies(name, n) {
        bail!("criterion {name} does not apply to a {n}-qubit state");
    }
    Ok(match name {
        "chsh" => CriterionReport::new("chsh", horodecki_chsh_max(state)?, 2.0),
        "mk-xy" => CriterionReport::new("mk-xy", mk_max_xy(state)?, 1.0),
        "tensor2" => CriterionReport::new("tensor2", two_setting_tensor_max(state)?, 1.0),
        "functional" => functional_violation(n, ghz_visibility(state).min(1.0))?,
        "ppt" => CriterionReport::new("ppt", -ppt_min_eigenvalue(state)?, PPT_NEGATIVITY_TOL),
        "eof" => CriterionReport::new("eof", eof(state)?, 0.0),
        _ => unreachable!(),
    })
}

/// Criterion report at parent visibility `p`, as used by threshold searches.
///
/// The functional criterion goes through the exact swapped-visibility law
/// v = p^N instead of simulating the joint state, which keeps scenarios such
/// as a seven-parent star within reach; every simulable case reproduces the
/// same visibility, so the two routes agree.
pub fn threshold_report(scenario: &Scenario, criterion: &str, p: f64) -> Result<CriterionReport> {
    if criterion == "functional" {
        let v = p.powi(scenario.n_parents as i32).clamp(0.0, 1.0);
        return Ok(functional_violation(scenario.output_qubits(), v)?);
    }
    evaluate_criterion(&scenario.swapped(p)?, criterion)
}
