//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A qubit index does not address a qubit of the target state.
    #[error("index out of range: qubit {index} on a {n_qubits}-qubit state")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    /// The same qubit was named twice in an index set.
    #[error("duplicate qubit index {0}")]
    DuplicateIndex(usize),

    /// Requested state would exceed the qubit cap (see `SWAPNET_MAX_QUBITS`).
    #[error("dimension cap exceeded: {requested} qubits > cap {cap}")]
    DimensionCap { requested: usize, cap: usize },

    /// A matrix expected to be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    /// A density matrix whose trace differs from one.
    #[error("trace is not 1 (got {0})")]
    NotUnitTrace(f64),

    /// A density matrix with a negative eigenvalue beyond tolerance.
    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    /// A ket whose amplitudes are not normalized.
    #[error("ket is not normalized (squared norm {0})")]
    NotNormalized(f64),

    /// A basis label outside the valid range for the measurement kind.
    #[error("outcome index {index} out of range 1..={max}")]
    OutcomeOutOfRange { index: usize, max: usize },

    /// Measurement outcome with probability below the numerical floor;
    /// no conditional state exists.
    #[error("zero-probability outcome")]
    ZeroProbabilityOutcome,

    /// A bisection bracket whose endpoints do not straddle the crossing.
    #[error("bracket does not straddle: predicate is {lo} at lo and {hi} at hi")]
    BracketDoesNotStraddle { lo: bool, hi: bool },

    /// Anything else that violates an operation's precondition.
    #[error("{0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
