//! Kets, density matrices and the small-dense-matrix linear algebra they
//! need: tensor products, partial traces and Hermitian eigendecompositions.
//!
//! Bit convention: qubit 0 is the leftmost symbol of a ket string, so basis
//! index `i` carries the bit of qubit `q` at position `n - 1 - q`:
//! `|01⟩` is index 1 of a two-qubit register, with qubit 0 in |0⟩.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::max_qubits;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex vector used throughout the crate.
pub type CVector = DVector<Complex64>;

/// Tolerance on Hermiticity of density matrices.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Tolerance on the unit trace of density matrices.
pub const TRACE_TOL: f64 = 1e-12;
/// Most negative eigenvalue tolerated by the positivity check; mixed-state
/// arithmetic accumulates rounding, tighter bounds cause false failures.
pub const PSD_MIN_EIGENVALUE: f64 = -1e-10;
/// Tolerance on the squared norm of kets.
pub const KET_NORM_TOL: f64 = 1e-12;
/// Hermiticity tolerance accepted by [`eig_hermitian`].
pub const EIG_HERMITICITY_TOL: f64 = 1e-10;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Bit of qubit `q` in basis index `i` of an `n`-qubit register.
#[inline]
pub fn qubit_bit(i: usize, q: usize, n: usize) -> usize {
    (i >> (n - 1 - q)) & 1
}

/// Basis index with the bit of qubit `q` forced to `bit`.
#[inline]
pub(crate) fn with_qubit_bit(i: usize, q: usize, n: usize, bit: usize) -> usize {
    let pos = n - 1 - q;
    (i & !(1 << pos)) | (bit << pos)
}

fn check_cap(n_qubits: usize) -> Result<()> {
    let cap = max_qubits();
    if n_qubits == 0 {
        return Err(Error::invalid("states must hold at least one qubit"));
    }
    if n_qubits > cap {
        return Err(Error::DimensionCap {
            requested: n_qubits,
            cap,
        });
    }
    Ok(())
}

/// Validates that `qubits` are distinct and address qubits of an `n`-qubit
/// state.
pub(crate) fn check_qubit_set(qubits: &[usize], n_qubits: usize) -> Result<()> {
    let mut seen = vec![false; n_qubits];
    for &q in qubits {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange { index: q, n_qubits });
        }
        if seen[q] {
            return Err(Error::DuplicateIndex(q));
        }
        seen[q] = true;
    }
    Ok(())
}

/// Largest absolute entrywise difference between two equally sized matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// A pure state of `n_qubits` qubits: 2^n complex amplitudes of unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    n_qubits: usize,
    amplitudes: CVector,
}

impl Ket {
    /// Builds a ket, checking the length is 2^n and the norm is 1 within
    /// [`KET_NORM_TOL`].
    pub fn new(n_qubits: usize, amplitudes: CVector) -> Result<Self> {
        check_cap(n_qubits)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::invalid(format!(
                "amplitude vector of length {} does not match {} qubits",
                amplitudes.len(),
                n_qubits
            )));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > KET_NORM_TOL {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Ket {
            n_qubits,
            amplitudes,
        })
    }

    /// Basis state |i⟩ of an `n`-qubit register.
    pub fn basis(n_qubits: usize, i: usize) -> Result<Self> {
        check_cap(n_qubits)?;
        let dim = 1 << n_qubits;
        if i >= dim {
            return Err(Error::IndexOutOfRange { index: i, n_qubits });
        }
        let mut amps = CVector::zeros(dim);
        amps[i] = C_ONE;
        Ket::new(n_qubits, amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Ket) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// The rank-1 density matrix |ψ⟩⟨ψ|.
    pub fn projector(&self) -> DensityMatrix {
        let m = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_raw(self.n_qubits, m)
    }
}

/// A mixed state: Hermitian, unit-trace, positive-semidefinite complex
/// matrix over `n_qubits` qubits.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Builds a density matrix from raw entries, verifying Hermiticity, the
    /// unit trace and positive semidefiniteness at the crate tolerances.
    pub fn new(n_qubits: usize, entries: CMatrix) -> Result<Self> {
        check_cap(n_qubits)?;
        let dim = 1 << n_qubits;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::invalid(format!(
                "{}x{} matrix does not match {} qubits",
                entries.nrows(),
                entries.ncols(),
                n_qubits
            )));
        }
        let rho = DensityMatrix { n_qubits, entries };
        rho.validate()?;
        Ok(rho)
    }

    /// Internal constructor for operations that preserve validity by
    /// construction (tensor products, partial traces, projections).
    pub(crate) fn from_raw(n_qubits: usize, entries: CMatrix) -> Self {
        debug_assert_eq!(entries.nrows(), 1 << n_qubits);
        debug_assert_eq!(entries.ncols(), 1 << n_qubits);
        DensityMatrix { n_qubits, entries }
    }

    /// Re-checks all density-matrix invariants: Hermiticity and trace at
    /// 1e-12 and smallest eigenvalue ≥ −1e-10.
    pub fn validate(&self) -> Result<()> {
        let herm = hermiticity_deviation(&self.entries);
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::NotUnitTrace(tr.re));
        }
        let (eigs, _) = eig_hermitian(&self.entries)?;
        let min = eigs.last().copied().unwrap_or(0.0);
        if min < PSD_MIN_EIGENVALUE {
            return Err(Error::NotPositive(min));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diagonal().sum()
    }

    /// tr(ρ²), 1 exactly for pure states.
    pub fn purity(&self) -> f64 {
        self.entries
            .iter()
            .zip(self.entries.transpose().iter())
            .map(|(a, b)| (a * b).re)
            .sum::<f64>()
    }

    /// Maximally mixed state I/2^n.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_cap(n_qubits)?;
        let dim = 1 << n_qubits;
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        Ok(DensityMatrix::from_raw(
            n_qubits,
            CMatrix::identity(dim, dim) * scale,
        ))
    }

    /// Kronecker product; `self`'s qubits occupy the leftmost (most
    /// significant) positions of the result.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        let n = self.n_qubits + other.n_qubits;
        check_cap(n)?;
        Ok(DensityMatrix::from_raw(
            n,
            self.entries.kronecker(&other.entries),
        ))
    }

    /// Traces out the qubits in `discard`; the remaining qubits keep their
    /// original relative order.
    pub fn partial_trace(&self, discard: &[usize]) -> Result<DensityMatrix> {
        check_qubit_set(discard, self.n_qubits)?;
        if discard.is_empty() {
            return Err(Error::invalid("discard set must be nonempty"));
        }
        if discard.len() == self.n_qubits {
            return Err(Error::invalid("cannot trace out every qubit"));
        }
        let mut sorted = discard.to_vec();
        sorted.sort_unstable();
        let kept: Vec<usize> = (0..self.n_qubits).filter(|q| !sorted.contains(q)).collect();

        let n_keep = kept.len();
        let keep_dim = 1 << n_keep;
        let disc_dim = 1 << sorted.len();

        // Bit masks of the full index addressed by each kept/discarded bit.
        let kept_pos: Vec<usize> = kept.iter().map(|&q| self.n_qubits - 1 - q).collect();
        let disc_pos: Vec<usize> = sorted.iter().map(|&q| self.n_qubits - 1 - q).collect();
        let expand = |pattern: usize, positions: &[usize]| -> usize {
            positions
                .iter()
                .enumerate()
                .map(|(k, &pos)| ((pattern >> (positions.len() - 1 - k)) & 1) << pos)
                .sum()
        };

        let mut out = CMatrix::zeros(keep_dim, keep_dim);
        for a in 0..keep_dim {
            let base_a = expand(a, &kept_pos);
            for b in 0..keep_dim {
                let base_b = expand(b, &kept_pos);
                let mut acc = C_ZERO;
                for d in 0..disc_dim {
                    let off = expand(d, &disc_pos);
                    acc += self.entries[(base_a | off, base_b | off)];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(DensityMatrix::from_raw(n_keep, out))
    }

    /// Conjugates the state by a single-qubit operator `u` acting on `qubit`:
    /// ρ → (I ⊗ u ⊗ I) ρ (I ⊗ u ⊗ I)†.
    pub fn apply_one_qubit(&self, qubit: usize, u: &[[Complex64; 2]; 2]) -> Result<DensityMatrix> {
        check_qubit_set(&[qubit], self.n_qubits)?;
        let dim = self.dim();
        let n = self.n_qubits;
        let mut out = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            let bi = qubit_bit(i, qubit, n);
            for j in 0..dim {
                let bj = qubit_bit(j, qubit, n);
                let mut acc = C_ZERO;
                for ki in 0..2 {
                    let row = with_qubit_bit(i, qubit, n, ki);
                    for kj in 0..2 {
                        let col = with_qubit_bit(j, qubit, n, kj);
                        acc += u[bi][ki] * self.entries[(row, col)] * u[bj][kj].conj();
                    }
                }
                out[(i, j)] = acc;
            }
        }
        Ok(DensityMatrix::from_raw(n, out))
    }

    /// Largest absolute entrywise difference from `other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns the real eigenvalues sorted in descending order and the matching
/// eigenvectors as the columns of a unitary matrix. Errors if the input
/// deviates from Hermiticity by more than [`EIG_HERMITICITY_TOL`].
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if m.nrows() != m.ncols() {
        return Err(Error::invalid("eigendecomposition needs a square matrix"));
    }
    let herm = hermiticity_deviation(m);
    if herm > EIG_HERMITICITY_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let decomp = nalgebra::linalg::SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..decomp.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        decomp.eigenvalues[b]
            .partial_cmp(&decomp.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&k| decomp.eigenvalues[k]).collect();
    let dim = m.nrows();
    let mut vectors = CMatrix::zeros(dim, dim);
    for (col, &k) in order.iter().enumerate() {
        vectors.set_column(col, &decomp.eigenvectors.column(k));
    }
    Ok((values, vectors))
}

/// σ_x.
pub fn sigma_x() -> [[Complex64; 2]; 2] {
    [[C_ZERO, C_ONE], [C_ONE, C_ZERO]]
}

/// σ_y.
pub fn sigma_y() -> [[Complex64; 2]; 2] {
    [
        [C_ZERO, Complex64::new(0.0, -1.0)],
        [Complex64::new(0.0, 1.0), C_ZERO],
    ]
}

/// σ_z.
pub fn sigma_z() -> [[Complex64; 2]; 2] {
    [[C_ONE, C_ZERO], [C_ZERO, Complex64::new(-1.0, 0.0)]]
}

/// 2x2 identity.
pub fn sigma_id() -> [[Complex64; 2]; 2] {
    [[C_ONE, C_ZERO], [C_ZERO, C_ONE]]
}

/// A Pauli `[[..]; 2]` block as a 2x2 `CMatrix`.
pub fn pauli_matrix(p: &[[Complex64; 2]; 2]) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| p[i][j])
}
