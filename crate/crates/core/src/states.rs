//! Constructors for the parametrized state families: the Bell and GHZ bases,
//! white noise, Werner states, noisy GHZ states and the two-parameter
//! repeater family λ|ψ⟩⟨ψ| + (1−λ)/2 (|00⟩⟨00| + |11⟩⟨11|).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{CVector, DensityMatrix, Ket};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn check_unit_interval(x: f64, name: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&x) || !x.is_finite() {
        return Err(Error::invalid(format!("{name} = {x} is outside [0, 1]")));
    }
    Ok(())
}

/// Derives the pair (a, b) with b = +√(1−a²) for a normalized amplitude pair.
pub fn amplitude_pair(a: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::invalid(format!(
            "amplitude a = {a} must lie in (0, 1)"
        )));
    }
    Ok((a, (1.0 - a * a).sqrt()))
}

/// Bell basis state `i` ∈ 1..=4:
/// |B₁,₂⟩ = (|00⟩ ± |11⟩)/√2, |B₃,₄⟩ = (|01⟩ ± |10⟩)/√2,
/// the + sign applying to odd indices.
pub fn bell_ket(i: usize) -> Result<Ket> {
    if !(1..=4).contains(&i) {
        return Err(Error::OutcomeOutOfRange { index: i, max: 4 });
    }
    ghz_ket(2, i)
}

/// GHZ basis state `i` ∈ 1..=2^n of an `n`-qubit register, n ≥ 2.
///
/// Basis strings come in complement pairs (s, s̄). Pairs are ordered by the
/// ascending integer value of the representative s with leading bit 0, so
/// pair m (0-based) holds indices 2m+1 and 2m+2 with states
/// (|m⟩ ± |s̄⟩)/√2, the + sign applying to odd indices. In particular
/// i = 1 is (|0…0⟩ + |1…1⟩)/√2, and n = 2 reproduces the Bell basis.
pub fn ghz_ket(n: usize, i: usize) -> Result<Ket> {
    if n < 2 {
        return Err(Error::invalid("GHZ basis needs at least 2 qubits"));
    }
    let dim = 1usize << n;
    if !(1..=dim).contains(&i) {
        return Err(Error::OutcomeOutOfRange { index: i, max: dim });
    }
    let (s, sign) = ghz_pattern(n, i);
    let mut amps = CVector::zeros(dim);
    amps[s] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1 - s] = Complex64::new(sign * FRAC_1_SQRT_2, 0.0);
    Ket::new(n, amps)
}

/// The (representative string, sign) pair of GHZ basis element `i`.
/// The representative has leading bit 0, i.e. s < 2^(n-1).
pub(crate) fn ghz_pattern(n: usize, i: usize) -> (usize, f64) {
    debug_assert!((1..=(1 << n)).contains(&i));
    let s = (i - 1) / 2;
    let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
    (s, sign)
}

/// Completely depolarized state I/2^n.
pub fn white_noise(n: usize) -> Result<DensityMatrix> {
    DensityMatrix::maximally_mixed(n)
}

/// Two-qubit Werner state p|B₁⟩⟨B₁| + (1−p) I/4.
pub fn werner(p: f64) -> Result<DensityMatrix> {
    noisy_ghz(2, p)
}

/// Noisy GHZ state of `m` qubits: V|GHZ_m⟩⟨GHZ_m| + (1−V) I/2^m.
/// Reduces to the Werner state for m = 2.
pub fn noisy_ghz(m: usize, v: f64) -> Result<DensityMatrix> {
    if m < 2 {
        return Err(Error::invalid("noisy GHZ states need at least 2 qubits"));
    }
    check_unit_interval(v, "visibility")?;
    let pure = ghz_ket(m, 1)?.projector();
    let noise = white_noise(m)?;
    let vis = Complex64::new(v, 0.0);
    let rest = Complex64::new(1.0 - v, 0.0);
    let entries = pure.entries() * vis + noise.entries() * rest;
    Ok(DensityMatrix::from_raw(m, entries))
}

/// Repeater input family λ|ψ⟩⟨ψ| + (1−λ)/2 (|00⟩⟨00| + |11⟩⟨11|) with
/// |ψ⟩ = a|01⟩ − b|10⟩ and b = +√(1−a²).
pub fn rho_lambda(a: f64, lambda: f64) -> Result<DensityMatrix> {
    let (a, b) = amplitude_pair(a)?;
    check_unit_interval(lambda, "lambda")?;
    let mut psi = CVector::zeros(4);
    psi[0b01] = Complex64::new(a, 0.0);
    psi[0b10] = Complex64::new(-b, 0.0);
    let pure = Ket::new(2, psi)?.projector();
    let mut entries = pure.entries() * Complex64::new(lambda, 0.0);
    let diag = Complex64::new((1.0 - lambda) / 2.0, 0.0);
    entries[(0b00, 0b00)] += diag;
    entries[(0b11, 0b11)] += diag;
    Ok(DensityMatrix::from_raw(2, entries))
}
