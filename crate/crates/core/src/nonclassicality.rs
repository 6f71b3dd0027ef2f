//! Entanglement and local-realism criteria: the N-qubit correlation tensor,
//! Mermin-Klyshko operators and their maximization over x-y-plane settings,
//! the two-setting correlation-tensor condition, functional Bell
//! inequalities, the Horodecki CHSH maximum, the PPT criterion, Wootters
//! concurrence, entanglement of formation, and a bisection search for
//! critical visibilities.
//!
//! Normalization: the MK operator obeys tr(B_n ρ) ≤ 1 for local-realistic
//! states, with algebraic maximum 2^((n−1)/2); the CHSH value returned by
//! [`horodecki_chsh_max`] uses the conventional scale where 2 is the
//! local-realistic bound and 2√2 the Tsirelson point, so it equals twice the
//! two-party MK maximum over general settings.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{
    eig_hermitian, pauli_matrix, sigma_x, sigma_y, sigma_z, CMatrix, DensityMatrix,
};

/// Largest qubit count accepted by the tensor-based criteria (3^n storage).
pub const MAX_CRITERION_QUBITS: usize = 8;

/// Absolute tolerance of [`critical_visibility`] bisection.
pub const BISECTION_TOL: f64 = 1e-5;

/// Eigenvalue floor below which the partial transpose counts as negative.
pub const PPT_NEGATIVITY_TOL: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Correlation tensors
// ---------------------------------------------------------------------------

/// A single-qubit Pauli axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

pub const AXES: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

/// Expectation value tr(ρ σ_{a₁} ⊗ … ⊗ σ_{aₙ}) of one Pauli product.
///
/// Each Pauli has one nonzero entry per row, so the trace reduces to a
/// single sum over basis indices.
pub fn pauli_product_expectation(rho: &DensityMatrix, axes: &[Axis]) -> f64 {
    let n = rho.n_qubits();
    assert_eq!(axes.len(), n, "one axis per qubit");
    let dim = rho.dim();
    let mut flip = 0usize;
    for (q, ax) in axes.iter().enumerate() {
        if matches!(ax, Axis::X | Axis::Y) {
            flip |= 1 << (n - 1 - q);
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..dim {
        let mut phase = Complex64::new(1.0, 0.0);
        for (q, ax) in axes.iter().enumerate() {
            let bit = (k >> (n - 1 - q)) & 1;
            match ax {
                Axis::X => {}
                Axis::Y => {
                    // σ_y|0⟩ = i|1⟩, σ_y|1⟩ = −i|0⟩
                    phase *= Complex64::new(0.0, if bit == 0 { 1.0 } else { -1.0 });
                }
                Axis::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        acc += phase * rho.entry(k, k ^ flip);
    }
    acc.re
}

/// The 3^n array T_{a₁…aₙ} = tr(ρ σ_{a₁} ⊗ … ⊗ σ_{aₙ}), aᵢ ∈ {x, y, z},
/// with qubit 0 the most significant base-3 digit.
#[derive(Debug, Clone)]
pub struct CorrelationTensor {
    n_qubits: usize,
    values: Vec<f64>,
}

impl CorrelationTensor {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, axes: &[Axis]) -> f64 {
        assert_eq!(axes.len(), self.n_qubits);
        let mut idx = 0usize;
        for ax in axes {
            idx = idx * 3
                + match ax {
                    Axis::X => 0,
                    Axis::Y => 1,
                    Axis::Z => 2,
                };
        }
        self.values[idx]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Computes the full correlation tensor of a state of at most
/// [`MAX_CRITERION_QUBITS`] qubits.
pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor> {
    let n = rho.n_qubits();
    if n > MAX_CRITERION_QUBITS {
        return Err(Error::DimensionCap {
            requested: n,
            cap: MAX_CRITERION_QUBITS,
        });
    }
    let total = 3usize.pow(n as u32);
    let mut values = Vec::with_capacity(total);
    let mut axes = vec![Axis::X; n];
    for idx in 0..total {
        let mut rem = idx;
        for q in (0..n).rev() {
            axes[q] = AXES[rem % 3];
            rem /= 3;
        }
        values.push(pauli_product_expectation(rho, &axes));
    }
    Ok(CorrelationTensor {
        n_qubits: n,
        values,
    })
}

/// In-plane correlation components T_{c₁…cₙ}, cᵢ ∈ {x, y}, indexed by the
/// bit pattern of the axis choices (0 = x, 1 = y, qubit 0 most significant).
fn xy_tensor(rho: &DensityMatrix) -> Vec<f64> {
    let n = rho.n_qubits();
    let mut axes = vec![Axis::X; n];
    (0..1usize << n)
        .map(|pattern| {
            for (q, ax) in axes.iter_mut().enumerate() {
                *ax = if (pattern >> (n - 1 - q)) & 1 == 0 {
                    Axis::X
                } else {
                    Axis::Y
                };
            }
            pauli_product_expectation(rho, &axes)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Mermin-Klyshko operators
// ---------------------------------------------------------------------------

/// Per-party pairs of x-y-plane measurement angles (φ_j, φ'_j) defining the
/// observables σ(φ) = cos φ σ_x + sin φ σ_y.
#[derive(Debug, Clone, PartialEq)]
pub struct XySettings {
    angles: Vec<(f64, f64)>,
}

impl XySettings {
    /// Validates finiteness and reduces every angle modulo 2π.
    pub fn new(angles: Vec<(f64, f64)>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::invalid("settings need at least one party"));
        }
        if angles.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::invalid("angles must be finite"));
        }
        let tau = 2.0 * PI;
        let reduced = angles
            .iter()
            .map(|&(a, b)| (a.rem_euclid(tau), b.rem_euclid(tau)))
            .collect();
        Ok(XySettings { angles: reduced })
    }

    pub fn n_parties(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[(f64, f64)] {
        &self.angles
    }

    /// The same settings as general Bloch unit vectors in the x-y plane.
    pub fn to_mk_settings(&self) -> MkSettings {
        MkSettings {
            pairs: self
                .angles
                .iter()
                .map(|&(a, b)| ([a.cos(), a.sin(), 0.0], [b.cos(), b.sin(), 0.0]))
                .collect(),
        }
    }
}

/// Per-party pairs of general Bloch unit vectors (a_j, a'_j).
#[derive(Debug, Clone, PartialEq)]
pub struct MkSettings {
    pub pairs: Vec<([f64; 3], [f64; 3])>,
}

fn bloch_operator(v: &[f64; 3]) -> CMatrix {
    let x = pauli_matrix(&sigma_x());
    let y = pauli_matrix(&sigma_y());
    let z = pauli_matrix(&sigma_z());
    x * Complex64::new(v[0], 0.0) + y * Complex64::new(v[1], 0.0) + z * Complex64::new(v[2], 0.0)
}

/// Builds the Mermin-Klyshko operator B_n from the recursion
/// B_k = ½ B_{k−1} ⊗ (σ_{a_k} + σ_{a'_k}) + ½ B'_{k−1} ⊗ (σ_{a_k} − σ_{a'_k}),
/// B₁ = σ_{a₁}, with B'_k obtained by swapping a_k ↔ a'_k. Party j acts on
/// qubit j−1.
pub fn mk_operator(settings: &MkSettings) -> CMatrix {
    let mut b = bloch_operator(&settings.pairs[0].0);
    let mut bp = bloch_operator(&settings.pairs[0].1);
    let half = Complex64::new(0.5, 0.0);
    for (a, ap) in settings.pairs.iter().skip(1) {
        let sa = bloch_operator(a);
        let sap = bloch_operator(ap);
        let sum = &sa + &sap;
        let diff = &sa - &sap;
        let next = (b.kronecker(&sum) + bp.kronecker(&diff)) * half;
        let nextp = (bp.kronecker(&sum) - b.kronecker(&diff)) * half;
        b = next;
        bp = nextp;
    }
    b
}

/// tr(B ρ) for the MK operator of the given settings.
pub fn mk_expectation(rho: &DensityMatrix, settings: &MkSettings) -> Result<f64> {
    if settings.pairs.len() != rho.n_qubits() {
        return Err(Error::invalid(format!(
            "{} setting pairs for a {}-qubit state",
            settings.pairs.len(),
            rho.n_qubits()
        )));
    }
    let b = mk_operator(settings);
    let prod = rho.entries() * b;
    Ok(prod.diagonal().sum().re)
}

/// Algebraic maximum 2^((n−1)/2) of the n-party MK operator.
pub fn mk_algebraic_max(n: usize) -> f64 {
    2f64.powf((n as f64 - 1.0) / 2.0)
}

// The MK expectation is multilinear in the per-setting axis vectors, so it
// can be evaluated as a contraction of the correlation tensor with the
// coefficient tensor built by the same recursion over plain real vectors.
// `d` is 2 for x-y-plane settings and 3 for general Bloch vectors.

fn mk_value_from_tensor(tensor: &[f64], vectors: &[Vec<f64>], d: usize) -> f64 {
    let n = vectors.len() / 2;
    let mut b = vectors[0].clone();
    let mut bp = vectors[1].clone();
    for j in 1..n {
        let u = &vectors[2 * j];
        let v = &vectors[2 * j + 1];
        let len = b.len();
        let mut nb = vec![0.0; len * d];
        let mut nbp = vec![0.0; len * d];
        for i in 0..len {
            for c in 0..d {
                let sum = u[c] + v[c];
                let diff = u[c] - v[c];
                nb[i * d + c] = 0.5 * (b[i] * sum + bp[i] * diff);
                nbp[i * d + c] = 0.5 * (bp[i] * sum - b[i] * diff);
            }
        }
        b = nb;
        bp = nbp;
    }
    b.iter().zip(tensor.iter()).map(|(x, t)| x * t).sum()
}

/// Deterministic cyclic ascent over the setting vectors. Each coordinate
/// update scans a coarse grid (16 points per angle for d = 2, the six axis
/// directions for d = 3) and then refines with the exact maximizer of the
/// one-dimensional section, which is linear in the vector being updated.
fn mk_maximize(tensor: &[f64], n: usize, d: usize, starts: &[Vec<Vec<f64>>]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for start in starts {
        let mut vectors = start.clone();
        let mut current = mk_value_from_tensor(tensor, &vectors, d);
        for _sweep in 0..300 {
            let before = current;
            for slot in 0..2 * n {
                // Coarse grid.
                let saved = vectors[slot].clone();
                let mut grid_best = (current, saved.clone());
                if d == 2 {
                    for k in 0..16 {
                        let phi = 2.0 * PI * k as f64 / 16.0;
                        vectors[slot] = vec![phi.cos(), phi.sin()];
                        let val = mk_value_from_tensor(tensor, &vectors, d);
                        if val > grid_best.0 {
                            grid_best = (val, vectors[slot].clone());
                        }
                    }
                } else {
                    for dir in [
                        [1.0, 0.0, 0.0],
                        [-1.0, 0.0, 0.0],
                        [0.0, 1.0, 0.0],
                        [0.0, -1.0, 0.0],
                        [0.0, 0.0, 1.0],
                        [0.0, 0.0, -1.0],
                    ] {
                        vectors[slot] = dir.to_vec();
                        let val = mk_value_from_tensor(tensor, &vectors, d);
                        if val > grid_best.0 {
                            grid_best = (val, vectors[slot].clone());
                        }
                    }
                }
                // Exact refinement: the objective restricted to this slot is
                // g·w + c, recovered from probes along the basis vectors.
                vectors[slot] = vec![0.0; d];
                let c = mk_value_from_tensor(tensor, &vectors, d);
                let mut g = vec![0.0; d];
                for (k, gk) in g.iter_mut().enumerate() {
                    let mut e = vec![0.0; d];
                    e[k] = 1.0;
                    vectors[slot] = e;
                    *gk = mk_value_from_tensor(tensor, &vectors, d) - c;
                }
                let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
                if c + norm > grid_best.0 && norm > 0.0 {
                    vectors[slot] = g.iter().map(|x| x / norm).collect();
                    current = c + norm;
                } else {
                    vectors[slot] = grid_best.1;
                    current = grid_best.0;
                }
            }
            if current - before < 1e-13 {
                break;
            }
        }
        if current > best {
            best = current;
        }
    }
    best
}

fn xy_starts(n: usize) -> Vec<Vec<Vec<f64>>> {
    let angle_sets: Vec<Vec<(f64, f64)>> = vec![
        (0..n).map(|_| (0.0, PI / 2.0)).collect(),
        (0..n).map(|_| (PI / 4.0, 3.0 * PI / 4.0)).collect(),
        (0..n).map(|_| (-PI / 6.0, PI / 3.0)).collect(),
        (0..n)
            .map(|j| (0.3 * j as f64 + 0.1, 0.3 * j as f64 + 0.1 + PI / 2.0))
            .collect(),
    ];
    angle_sets
        .into_iter()
        .map(|set| {
            set.into_iter()
                .flat_map(|(a, b)| [vec![a.cos(), a.sin()], vec![b.cos(), b.sin()]].into_iter())
                .collect()
        })
        .collect()
}

/// Maximum of tr(B_n ρ) over all x-y-plane setting angles φ_j, φ'_j.
///
/// Deterministic: a fixed list of starting settings, each improved by
/// cyclic coordinate ascent with per-angle grid seeding and exact
/// one-dimensional refinement. Values above 1 witness violation of the MK
/// inequality.
pub fn mk_max_xy(rho: &DensityMatrix) -> Result<f64> {
    let n = rho.n_qubits();
    if n > MAX_CRITERION_QUBITS {
        return Err(Error::DimensionCap {
            requested: n,
            cap: MAX_CRITERION_QUBITS,
        });
    }
    let tensor = xy_tensor(rho);
    Ok(mk_maximize(&tensor, n, 2, &xy_starts(n)))
}

/// Maximum of tr(B_n ρ) over general Bloch-vector settings; the
/// cross-check mode used to validate [`horodecki_chsh_max`] at n = 2.
pub fn mk_max_general(rho: &DensityMatrix) -> Result<f64> {
    let n = rho.n_qubits();
    if n > MAX_CRITERION_QUBITS {
        return Err(Error::DimensionCap {
            requested: n,
            cap: MAX_CRITERION_QUBITS,
        });
    }
    let tensor = correlation_tensor(rho)?.values().to_vec();
    let s3 = 1.0 / 3f64.sqrt();
    let s2 = 1.0 / 2f64.sqrt();
    let starts: Vec<Vec<Vec<f64>>> = vec![
        (0..n)
            .flat_map(|_| [vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]].into_iter())
            .collect(),
        (0..n)
            .flat_map(|_| [vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]].into_iter())
            .collect(),
        (0..n)
            .flat_map(|_| [vec![s3, s3, s3], vec![s2, -s2, 0.0]].into_iter())
            .collect(),
        (0..n)
            .flat_map(|_| [vec![0.0, s2, s2], vec![s2, 0.0, -s2]].into_iter())
            .collect(),
    ];
    Ok(mk_maximize(&tensor, n, 3, &starts))
}

// ---------------------------------------------------------------------------
// GHZ visibility and the two-setting tensor criterion
// ---------------------------------------------------------------------------

/// Extremal-coherence visibility 2|⟨0…0|ρ|1…1⟩|: the weight of the GHZ-type
/// coherence, which is the only term feeding the x-y-plane MK expectation
/// for the swapped states in scope.
pub fn ghz_visibility(rho: &DensityMatrix) -> f64 {
    2.0 * rho.entry(0, rho.dim() - 1).norm()
}

/// Maximum over independent local orthonormal axis pairs of the sum of
/// squared rotated correlation-tensor components inside the 2×2×2 block;
/// values above 1 witness violation of local realism with two settings per
/// site. Three-qubit states only.
pub fn two_setting_tensor_max(rho: &DensityMatrix) -> Result<f64> {
    if rho.n_qubits() != 3 {
        return Err(Error::invalid(
            "two-setting tensor criterion applies to 3-qubit states",
        ));
    }
    let tensor = correlation_tensor(rho)?;
    let t = tensor.values(); // index 9 c1 + 3 c2 + c3

    let contract = |site: usize, frames: &[[[f64; 3]; 2]; 3], ka: usize, kb: usize| -> [f64; 3] {
        // Contract the two other sites, leaving `site` free.
        let mut out = [0.0; 3];
        let others: [usize; 2] = match site {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        };
        let va = frames[others[0]][ka];
        let vb = frames[others[1]][kb];
        for (free, slot) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (c1, &wa) in va.iter().enumerate() {
                for (c2, &wb) in vb.iter().enumerate() {
                    let mut idx3 = [0usize; 3];
                    idx3[site] = free;
                    idx3[others[0]] = c1;
                    idx3[others[1]] = c2;
                    acc += t[9 * idx3[0] + 3 * idx3[1] + idx3[2]] * wa * wb;
                }
            }
            *slot = acc;
        }
        out
    };

    let block_sum = |frames: &[[[f64; 3]; 2]; 3]| -> f64 {
        let mut s = 0.0;
        for ka in 0..2 {
            for kb in 0..2 {
                let v = contract(0, frames, ka, kb);
                for e in &frames[0] {
                    let val = v[0] * e[0] + v[1] * e[1] + v[2] * e[2];
                    s += val * val;
                }
            }
        }
        s
    };

    let ex = [1.0, 0.0, 0.0];
    let ey = [0.0, 1.0, 0.0];
    let ez = [0.0, 0.0, 1.0];
    let s2 = 1.0 / 2f64.sqrt();
    let d1 = [s2, s2, 0.0];
    let d2 = [s2, -s2, 0.0];
    let frame_sets: Vec<[[[f64; 3]; 2]; 3]> = vec![
        [[ex, ey]; 3],
        [[ey, ez]; 3],
        [[ez, ex]; 3],
        [[d1, d2]; 3],
        [[ex, ey], [ey, ez], [ez, ex]],
    ];

    let mut best = 0.0f64;
    for start in frame_sets {
        let mut frames = start;
        let mut current = block_sum(&frames);
        for _ in 0..200 {
            let before = current;
            for site in 0..3 {
                // The block sum restricted to this site's pair is
                // aᵀMa + bᵀMb with M the PSD sum of contraction outers, so
                // the optimal pair spans the top-2 eigenvectors of M.
                let mut m = nalgebra::DMatrix::<f64>::zeros(3, 3);
                for ka in 0..2 {
                    for kb in 0..2 {
                        let v = contract(site, &frames, ka, kb);
                        for i in 0..3 {
                            for j in 0..3 {
                                m[(i, j)] += v[i] * v[j];
                            }
                        }
                    }
                }
                let eig = nalgebra::linalg::SymmetricEigen::new(m);
                let mut order: Vec<usize> = (0..3).collect();
                order
                    .sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
                for (slot, &k) in order.iter().take(2).enumerate() {
                    let col = eig.eigenvectors.column(k);
                    frames[site][slot] = [col[0], col[1], col[2]];
                }
                current = block_sum(&frames);
            }
            if current - before < 1e-13 {
                break;
            }
        }
        if current > best {
            best = current;
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Functional Bell inequality
// ---------------------------------------------------------------------------

/// ‖E_QM‖² = v² (2π)^n / 2 for the correlation E_QM = v cos(φ₁ + … + φ_n)
/// of a GHZ-visibility-v state probed in the x-y plane.
pub fn functional_norm_sq(n: usize, v: f64) -> f64 {
    v * v * (2.0 * PI).powi(n as i32) / 2.0
}

/// Largest scalar product ⟨E_QM|E_LHV⟩ over local-hidden-variable
/// correlations: v·4^n, from the per-site bound ∫|cos| dφ = 4 extended
/// multiplicatively.
pub fn functional_lhv_bound(n: usize, v: f64) -> f64 {
    v * 4f64.powi(n as i32)
}

/// Visibility above which ‖E_QM‖² exceeds the LHV bound: 2 (2/π)^n.
pub fn functional_visibility_threshold(n: usize) -> f64 {
    2.0 * (2.0 / PI).powi(n as i32)
}

/// Critical parent visibility V^f_N = (2/π) 2^(1/N) for a star of N Werner
/// states (swapped visibility p^N) probed by the functional inequality.
pub fn functional_parent_threshold(n: usize) -> f64 {
    (2.0 / PI) * 2f64.powf(1.0 / n as f64)
}

/// Functional-Bell verdict for an n-party state of GHZ visibility `v`:
/// violated iff v exceeds [`functional_visibility_threshold`].
pub fn functional_violation(n: usize, v: f64) -> Result<CriterionReport> {
    if n < 1 {
        return Err(Error::invalid("need at least one party"));
    }
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::invalid(format!("visibility {v} outside [0, 1]")));
    }
    Ok(CriterionReport::new(
        "functional",
        v,
        functional_visibility_threshold(n),
    ))
}

// ---------------------------------------------------------------------------
// Two-qubit criteria
// ---------------------------------------------------------------------------

fn require_two_qubits(rho: &DensityMatrix, what: &str) -> Result<()> {
    if rho.n_qubits() != 2 {
        return Err(Error::invalid(format!(
            "{what} applies to 2-qubit states, got {} qubits",
            rho.n_qubits()
        )));
    }
    Ok(())
}

/// Horodecki CHSH maximum 2√(m₁+m₂), with m₁ ≥ m₂ the two largest
/// eigenvalues of TᵀT for the 3×3 correlation matrix T. Values above 2
/// witness CHSH violation.
pub fn horodecki_chsh_max(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho, "the Horodecki CHSH maximum")?;
    let mut t = nalgebra::DMatrix::<f64>::zeros(3, 3);
    for (i, ai) in AXES.iter().enumerate() {
        for (j, aj) in AXES.iter().enumerate() {
            t[(i, j)] = pauli_product_expectation(rho, &[*ai, *aj]);
        }
    }
    let m = t.transpose() * &t;
    let eig = nalgebra::linalg::SymmetricEigen::new(m);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(2.0 * (vals[0] + vals[1]).max(0.0).sqrt())
}

/// Partial transpose over the second qubit.
fn partial_transpose(rho: &DensityMatrix) -> CMatrix {
    let mut pt = CMatrix::zeros(4, 4);
    for a in 0..2 {
        for b in 0..2 {
            for ap in 0..2 {
                for bp in 0..2 {
                    pt[(2 * a + b, 2 * ap + bp)] = rho.entry(2 * a + bp, 2 * ap + b);
                }
            }
        }
    }
    pt
}

/// Smallest eigenvalue of the partial transpose.
pub fn ppt_min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho, "the PPT criterion")?;
    let (eigs, _) = eig_hermitian(&partial_transpose(rho))?;
    Ok(*eigs.last().expect("nonempty spectrum"))
}

/// True iff the partial transpose has an eigenvalue below
/// −[`PPT_NEGATIVITY_TOL`], i.e. the state is entangled.
pub fn ppt_entangled(rho: &DensityMatrix) -> Result<bool> {
    Ok(ppt_min_eigenvalue(rho)? < -PPT_NEGATIVITY_TOL)
}

/// Wootters concurrence: with ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y) and λ₁ ≥ … ≥ λ₄
/// the square roots of the eigenvalues of ρρ̃,
/// C = max{0, λ₁ − λ₂ − λ₃ − λ₄}.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho, "concurrence")?;
    let yy = pauli_matrix(&sigma_y()).kronecker(&pauli_matrix(&sigma_y()));
    let conj = rho.entries().map(|z| z.conj());
    let rho_tilde = &yy * conj * &yy;

    // λᵢ via the Hermitian route: eigenvalues of √ρ ρ̃ √ρ.
    let (eigs, vecs) = eig_hermitian(rho.entries())?;
    let sqrt_diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        eigs.iter().map(|&x| Complex64::new(x.max(0.0).sqrt(), 0.0)),
    ));
    let sqrt_rho = &vecs * sqrt_diag * vecs.adjoint();
    let core = &sqrt_rho * rho_tilde * &sqrt_rho;
    let (mut mu, _) = eig_hermitian(&core)?;
    for m in &mut mu {
        *m = m.max(0.0).sqrt();
    }
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// Binary entropy H(x) = −x log₂ x − (1−x) log₂ (1−x), with H(0) = H(1) = 0.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation E = H((1 + √(1 − C²))/2).
pub fn eof(rho: &DensityMatrix) -> Result<f64> {
    let c = concurrence(rho)?;
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())))
}

// ---------------------------------------------------------------------------
// Critical visibilities
// ---------------------------------------------------------------------------

/// Bisection for the parameter at which a monotone predicate switches from
/// false to true, to absolute tolerance [`BISECTION_TOL`].
///
/// Requires predicate(lo) = false and predicate(hi) = true.
pub fn critical_visibility<F>(predicate: F, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<bool>,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid(format!("invalid bracket [{lo}, {hi}]")));
    }
    let at_lo = predicate(lo)?;
    let at_hi = predicate(hi)?;
    if at_lo || !at_hi {
        return Err(Error::BracketDoesNotStraddle {
            lo: at_lo,
            hi: at_hi,
        });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if predicate(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One criterion evaluated on one state: its value, the violation threshold,
/// and the verdict value > threshold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub value: f64,
    pub threshold: f64,
    pub violated: bool,
}

impl CriterionReport {
    pub fn new(criterion: impl Into<String>, value: f64, threshold: f64) -> Self {
        CriterionReport {
            criterion: criterion.into(),
            value,
            threshold,
            violated: value > threshold,
        }
    }
}
