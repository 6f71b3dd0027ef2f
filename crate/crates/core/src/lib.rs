//! Dense density-matrix engine for simulating entanglement swapping of noisy
//! few-qubit states, together with the nonclassicality criteria used to
//! certify the swapped states: Mermin-Klyshko operators maximized in the
//! x-y plane, the two-setting correlation-tensor condition, functional Bell
//! inequalities, the CHSH/Horodecki maximum, the PPT criterion, and the
//! Wootters concurrence / entanglement of formation.
//!
//! The crate is organized around a small number of pure building blocks:
//!
//! * [`qstate`] — kets, density matrices, tensor products, partial traces
//!   and Hermitian eigendecompositions of small dense complex matrices.
//! * [`states`] — constructors for the parametrized state families (Bell and
//!   GHZ bases, white noise, Werner states, noisy GHZ states and the
//!   two-parameter repeater family).
//! * [`measurement`] — Bell/GHZ basis projectors, conditional post-measurement
//!   states and the canonical Pauli corrections.
//! * [`swap`] — chain and star swapping networks plus closed-form oracle
//!   states for the Werner families.
//! * [`nonclassicality`] — all entanglement and local-realism criteria and
//!   the bisection search for critical visibilities.
//!
//! Everything is immutable after construction and every operation is a pure
//! function of its inputs, so values can be shared freely across threads.
//!
//! Qubit ordering convention: qubit 0 is the leftmost symbol of a ket string
//! such as |01⟩, i.e. basis index `i` assigns to qubit `q` the bit
//! `(i >> (n - 1 - q)) & 1` (big-endian).

pub mod error;
pub mod measurement;
pub mod nonclassicality;
pub mod qstate;
pub mod states;
pub mod swap;

pub use error::{Error, Result};
pub use measurement::{measure, BasisKind, BasisProjector, MeasurementOutcome};
pub use nonclassicality::CriterionReport;
pub use qstate::{DensityMatrix, Ket};
pub use swap::{OutcomePolicy, SwapConfig, Topology};

/// Default cap on the number of qubits a state may hold (dimension 2^12).
pub const DEFAULT_MAX_QUBITS: usize = 12;

/// Environment variable overriding [`DEFAULT_MAX_QUBITS`].
pub const MAX_QUBITS_ENV: &str = "SWAPNET_MAX_QUBITS";

/// The qubit cap in effect: `SWAPNET_MAX_QUBITS` if set to a valid positive
/// integer, otherwise [`DEFAULT_MAX_QUBITS`]. Read once per process.
pub fn max_qubits() -> usize {
    use std::sync::OnceLock;
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_QUBITS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&n| n >= 1)
            .unwrap_or(DEFAULT_MAX_QUBITS)
    })
}
