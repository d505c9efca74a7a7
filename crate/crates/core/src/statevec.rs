//! Dense pure-state register.
//!
//! Qubits are addressed by 1-based position, left to right in the ket:
//! qubit 1 is the most significant bit of the basis index, so
//! `|q1 q2 ... qn>` reads exactly like the printed kets.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Real;

/// Upper bound on register size; 2^20 amplitudes is far beyond any protocol use.
pub const MAX_QUBITS: usize = 20;

/// Normalized state vector over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    num_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes, checking the length and the norm.
    pub fn new(num_qubits: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(num_qubits));
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::AmplitudeCount {
                num_qubits,
                len: amps.len(),
            });
        }
        let state = Self { num_qubits, amps };
        let norm = state.norm();
        if !norm.is_finite() || (norm - T::one()).abs() > T::norm_tol() {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        Ok(state)
    }

    /// Scales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(num_qubits: usize, mut amps: Vec<Complex<T>>) -> Result<Self> {
        let norm = amps
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt();
        if norm == T::zero() || !norm.is_finite() {
            return Err(Error::NotNormalized {
                norm: norm.as_f64(),
            });
        }
        for z in amps.iter_mut() {
            *z /= norm;
        }
        Self::new(num_qubits, amps)
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::EmptyRegister);
        }
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits(num_qubits));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::BadPattern(format!("{index}")));
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { num_qubits, amps })
    }

    /// Basis state from a bit string such as `"0110"`.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let index = parse_bits(bits)?;
        Self::basis(bits.len(), index)
    }

    /// Superposition `sum_k c_k |bits_k>` with the given coefficients, normalized.
    pub fn from_terms(terms: &[(&str, Complex<T>)]) -> Result<Self> {
        let n = terms
            .first()
            .map(|(b, _)| b.len())
            .ok_or(Error::EmptyRegister)?;
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::BadPattern(String::new()));
        }
        let mut amps = vec![Complex::zero(); 1 << n];
        for (bits, coeff) in terms {
            if bits.len() != n {
                return Err(Error::BadPattern((*bits).to_owned()));
            }
            amps[parse_bits(bits)?] += *coeff;
        }
        Self::normalized(n, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amps[index]
    }

    /// Amplitude of the basis ket spelled by `bits`.
    pub fn amplitude_of(&self, bits: &str) -> Result<Complex<T>> {
        if bits.len() != self.num_qubits {
            return Err(Error::BadPattern(bits.to_owned()));
        }
        Ok(self.amps[parse_bits(bits)?])
    }

    pub fn norm(&self) -> T {
        self.amps
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    /// Largest entrywise amplitude difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm()))
    }

    /// Multiplies by a unit-modulus phase.
    pub fn with_global_phase(&self, phase: Complex<T>) -> Self {
        Self {
            num_qubits: self.num_qubits,
            amps: self.amps.iter().map(|&z| z * phase).collect(),
        }
    }

    /// Basis kets with non-negligible amplitude, as (bit string, amplitude), in index order.
    pub fn support(&self) -> Vec<(String, Complex<T>)> {
        let cutoff = T::lit(T::AMP_CUTOFF);
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > cutoff)
            .map(|(i, &z)| (ket_string(i, self.num_qubits), z))
            .collect()
    }

    /// `|self><self|` as a density matrix over all qubits.
    pub fn projector(&self) -> DensityMatrix<T> {
        let dim = self.dim();
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = self.amps[i] * self.amps[j].conj();
            }
        }
        DensityMatrix {
            num_qubits: self.num_qubits,
            matrix: m,
        }
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q == 0 || q > self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    fn check_distinct(&self, qubits: &[usize]) -> Result<()> {
        for (k, &q) in qubits.iter().enumerate() {
            self.check_qubit(q)?;
            if qubits[..k].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    /// Bit mask of qubit `q` (1-based) inside the basis index.
    #[inline]
    fn mask(&self, q: usize) -> usize {
        1 << (self.num_qubits - q)
    }

    /// Scatters the bits of `local` (MSB = first listed qubit) onto `qubits`.
    fn scatter(&self, qubits: &[usize], local: usize) -> usize {
        let k = qubits.len();
        qubits.iter().enumerate().fold(0, |acc, (pos, &q)| {
            if local >> (k - 1 - pos) & 1 == 1 {
                acc | self.mask(q)
            } else {
                acc
            }
        })
    }

    /// Indices of the basis states with all `qubits` cleared, in ascending order.
    fn rest_indices(&self, qubits: &[usize]) -> Vec<usize> {
        let used = qubits.iter().fold(0, |acc, &q| acc | self.mask(q));
        (0..self.dim()).filter(|i| i & used == 0).collect()
    }
}

/// Parses a string of `0`/`1` characters into a basis index (first char = MSB).
pub fn parse_bits(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > MAX_QUBITS {
        return Err(Error::BadPattern(bits.to_owned()));
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::BadPattern(bits.to_owned())),
    })
}

/// Renders basis index `index` as an `n`-character bit string.
pub fn ket_string(index: usize, n: usize) -> String {
    (0..n)
        .map(|k| {
            if index >> (n - 1 - k) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

impl<T: Real> fmt::Display for StateVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (ket, z) in self.support() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)|{}>", z.re, z.im, ket)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `a ⊗ b`: amplitude at the concatenated index is the product of amplitudes.
pub fn tensor<T: Real>(a: &StateVector<T>, b: &StateVector<T>) -> Result<StateVector<T>> {
    let n = a.num_qubits + b.num_qubits;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits(n));
    }
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for &x in &a.amps {
        for &y in &b.amps {
            amps.push(x * y);
        }
    }
    StateVector::new(n, amps)
}

/// Moves qubit `k` to position `perm[k - 1]` (both 1-based).
pub fn permute_qubits<T: Real>(s: &StateVector<T>, perm: &[usize]) -> Result<StateVector<T>> {
    let n = s.num_qubits;
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::InvalidPermutation(n));
        }
        seen[p - 1] = true;
    }
    let mut amps = vec![Complex::zero(); s.dim()];
    for (i, &z) in s.amps.iter().enumerate() {
        let mut j = 0;
        for (k, &p) in perm.iter().enumerate() {
            if i >> (n - 1 - k) & 1 == 1 {
                j |= 1 << (n - p);
            }
        }
        amps[j] = z;
    }
    StateVector::new(n, amps)
}

/// Applies `gate` to `targets`; the first target is the gate's most significant qubit.
pub fn apply_unitary<T: Real>(
    s: &StateVector<T>,
    gate: &crate::gates::Gate<T>,
    targets: &[usize],
) -> Result<StateVector<T>> {
    if targets.len() != gate.arity() {
        return Err(Error::ArityMismatch {
            gate: gate.name().to_owned(),
            arity: gate.arity(),
            targets: targets.len(),
        });
    }
    s.check_distinct(targets)?;
    let local_dim = 1 << targets.len();
    let offsets: Vec<usize> = (0..local_dim).map(|l| s.scatter(targets, l)).collect();
    let m = gate.matrix();
    let mut amps = s.amps.clone();
    let mut buf = vec![Complex::zero(); local_dim];
    for base in s.rest_indices(targets) {
        for (l, &off) in offsets.iter().enumerate() {
            buf[l] = s.amps[base | off];
        }
        for (r, &off) in offsets.iter().enumerate() {
            let mut acc = Complex::zero();
            for (l, &x) in buf.iter().enumerate() {
                acc += m[(r, l)] * x;
            }
            amps[base | off] = acc;
        }
    }
    StateVector::new(s.num_qubits, amps)
}

/// One outcome of a projective two-qubit measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch<T: Real> {
    /// Index into the supplied basis.
    pub outcome: usize,
    pub probability: T,
    /// Full register after collapse; the measured pair sits in the outcome basis state.
    pub post_state: StateVector<T>,
}

/// Result of [`measure_two_qubit`]: surviving branches plus the probability
/// mass of branches that fell below the pruning threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement<T: Real> {
    pub branches: Vec<MeasurementBranch<T>>,
    pub dropped_mass: T,
    pub dropped_outcomes: Vec<usize>,
}

/// Residual `max |<b_i|b_j> - δ_ij|` of a candidate basis.
pub fn orthonormality_residual<T: Real>(basis: &[StateVector<T>]) -> T {
    let mut worst = T::zero();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((a.inner(b) - Complex::new(target, T::zero())).norm());
        }
    }
    worst
}

/// Projective measurement of qubits `pair = (i, j)` in a four-element
/// orthonormal two-qubit basis, keeping every branch with probability at
/// least `prune`. Measurement is non-destructive.
pub fn measure_two_qubit<T: Real>(
    s: &StateVector<T>,
    basis: &[StateVector<T>; 4],
    pair: (usize, usize),
    prune: T,
) -> Result<Measurement<T>> {
    if pair.0 == pair.1 {
        return Err(Error::DuplicateQubit(pair.0));
    }
    let targets = [pair.0, pair.1];
    s.check_distinct(&targets)?;
    if basis.iter().any(|b| b.num_qubits() != 2) {
        return Err(Error::NonOrthonormalBasis {
            residual: f64::INFINITY,
        });
    }
    let residual = orthonormality_residual(basis);
    if residual > T::norm_tol() {
        return Err(Error::NonOrthonormalBasis {
            residual: residual.as_f64(),
        });
    }
    let offsets: Vec<usize> = (0..4).map(|l| s.scatter(&targets, l)).collect();
    let rest = s.rest_indices(&targets);
    let mut branches = Vec::new();
    let mut dropped_mass = T::zero();
    let mut dropped_outcomes = Vec::new();
    for (outcome, b) in basis.iter().enumerate() {
        // coefficient of |b> ⊗ |rest> for every rest configuration
        let coeffs: Vec<Complex<T>> = rest
            .iter()
            .map(|&base| {
                offsets
                    .iter()
                    .enumerate()
                    .fold(Complex::zero(), |acc, (l, &off)| {
                        acc + b.amps[l].conj() * s.amps[base | off]
                    })
            })
            .collect();
        let probability = coeffs
            .iter()
            .map(|z| z.norm_sqr())
            .fold(T::zero(), |a, x| a + x);
        if probability < prune {
            dropped_mass += probability;
            dropped_outcomes.push(outcome);
            continue;
        }
        let scale = probability.sqrt();
        let mut amps = vec![Complex::zero(); s.dim()];
        for (&base, &cf) in rest.iter().zip(&coeffs) {
            for (l, &off) in offsets.iter().enumerate() {
                amps[base | off] = b.amps[l] * cf / scale;
            }
        }
        branches.push(MeasurementBranch {
            outcome,
            probability,
            post_state: StateVector::new(s.num_qubits, amps)?,
        });
    }
    Ok(Measurement {
        branches,
        dropped_mass,
        dropped_outcomes,
    })
}

/// Mixed state over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    num_qubits: usize,
    matrix: Matrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates hermiticity, unit trace and positive semidefiniteness.
    pub fn new(num_qubits: usize, matrix: Matrix<T>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if num_qubits == 0 || matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::InvalidDensity(format!(
                "expected {dim}x{dim}, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let tol = T::norm_tol();
        let herm = matrix.hermiticity_residual();
        if herm > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian ({herm})")));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let min = linalg::hermitian_eigenvalues(&matrix)
            .last()
            .copied()
            .unwrap_or_else(T::zero);
        if min < -T::lit(1e-10) {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min}")));
        }
        Ok(Self { num_qubits, matrix })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> T {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Partial trace onto `keep` (1-based qubits, reduced register ordered as listed).
pub fn reduced_density<T: Real>(s: &StateVector<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    if keep.is_empty() {
        return Err(Error::EmptySubset);
    }
    s.check_distinct(keep)?;
    let k = keep.len();
    let local_dim = 1 << k;
    let offsets: Vec<usize> = (0..local_dim).map(|l| s.scatter(keep, l)).collect();
    let rest = s.rest_indices(keep);
    let mut m = Matrix::zeros(local_dim, local_dim);
    for &base in &rest {
        for (a, &oa) in offsets.iter().enumerate() {
            let za = s.amps[base | oa];
            if za.is_zero() {
                continue;
            }
            for (b, &ob) in offsets.iter().enumerate() {
                m[(a, b)] += za * s.amps[base | ob].conj();
            }
        }
    }
    // exact Gram form: Hermitian PSD by construction, skip the eigen check
    Ok(DensityMatrix {
        num_qubits: k,
        matrix: m,
    })
}
