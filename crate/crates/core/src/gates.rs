//! Gate and basis constructors used by the recognition and swap stages.

use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{c, cr, Real};
use crate::statevec::StateVector;

/// Unitary acting on `arity` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate<T: Real> {
    name: String,
    arity: usize,
    matrix: Matrix<T>,
}

impl<T: Real> Gate<T> {
    /// Checks that `matrix` is `2^k x 2^k` and unitary within the scalar's tolerance.
    pub fn new(name: impl Into<String>, matrix: Matrix<T>) -> Result<Self> {
        let name = name.into();
        let dim = matrix.rows();
        if !matrix.is_square() || dim < 2 || !dim.is_power_of_two() {
            return Err(Error::BadDimension(dim));
        }
        let residual = matrix.unitarity_residual();
        // NaN residuals must fail too
        if residual.is_nan() || residual > T::norm_tol() {
            return Err(Error::NotUnitary {
                name,
                residual: residual.as_f64(),
            });
        }
        Ok(Self {
            name,
            arity: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    fn real2(name: &str, m: [[T; 2]; 2]) -> Result<Self> {
        let data = m.iter().flatten().map(|&x| cr(x)).collect();
        Self::new(name, Matrix::from_vec(2, 2, data))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn unitarity_residual(&self) -> T {
        self.matrix.unitarity_residual()
    }

    /// Image of computational basis state `|index>`: column `index` of the matrix.
    pub fn column(&self, index: usize) -> Vec<Complex<T>> {
        self.matrix.column(index)
    }
}

fn finite<T: Real>(theta: T) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteAngle(theta.as_f64()))
    }
}

pub fn identity<T: Real>(arity: usize) -> Gate<T> {
    Gate::new(format!("I{arity}"), Matrix::identity(1 << arity)).expect("identity is unitary")
}

pub fn pauli_x<T: Real>() -> Gate<T> {
    Gate::real2("X", [[T::zero(), T::one()], [T::one(), T::zero()]]).expect("X is unitary")
}

pub fn pauli_z<T: Real>() -> Gate<T> {
    Gate::real2("Z", [[T::one(), T::zero()], [T::zero(), -T::one()]]).expect("Z is unitary")
}

/// Pauli gate selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Z,
}

pub fn pauli<T: Real>(which: Pauli) -> Gate<T> {
    match which {
        Pauli::X => pauli_x(),
        Pauli::Z => pauli_z(),
    }
}

/// Counterclockwise rotation `[[cos, -sin], [sin, cos]]`.
pub fn rotation<T: Real>(theta: T) -> Result<Gate<T>> {
    finite(theta)?;
    let (s, co) = theta.sin_cos();
    Gate::real2("R", [[co, -s], [s, co]])
}

/// Superposition gate `SP(θ) = R(θ)·Z = [[cos, sin], [sin, -cos]]`.
/// Real symmetric, hence Hermitian and an involution.
pub fn sp<T: Real>(theta: T) -> Result<Gate<T>> {
    finite(theta)?;
    let (s, co) = theta.sin_cos();
    Gate::real2("SP", [[co, s], [s, -co]])
}

/// `SP(π/4)`.
pub fn hadamard<T: Real>() -> Gate<T> {
    sp(T::FRAC_PI_4()).expect("finite angle")
}

/// Two-qubit entangler conditioned on equal bits: identity on `|01>`, `|10>`,
/// Hadamard on the `{|00>, |11>}` subspace.
pub fn equality_entangler<T: Real>() -> Gate<T> {
    let h = T::FRAC_1_SQRT_2();
    let o = T::zero();
    let one = T::one();
    let rows = [[h, o, o, h], [o, one, o, o], [o, o, one, o], [h, o, o, -h]];
    let data = rows.iter().flatten().map(|&x| cr(x)).collect();
    Gate::new("V", Matrix::from_vec(4, 4, data)).expect("V is unitary")
}

/// Bell state label `β_jk`: `k` is the parity bit, `j` the relative-sign bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BellLabel {
    pub j: u8,
    pub k: u8,
}

impl BellLabel {
    /// Measurement order used everywhere: β00, β01, β10, β11.
    pub const ALL: [BellLabel; 4] = [
        BellLabel { j: 0, k: 0 },
        BellLabel { j: 0, k: 1 },
        BellLabel { j: 1, k: 0 },
        BellLabel { j: 1, k: 1 },
    ];

    pub const fn new(j: u8, k: u8) -> Self {
        Self { j: j & 1, k: k & 1 }
    }

    pub fn index(self) -> usize {
        usize::from(self.j) * 2 + usize::from(self.k)
    }

    /// `β00` and `β10` pair equal bits: two or zero protons on the bond.
    pub fn is_even_parity(self) -> bool {
        self.k == 0
    }

    /// Label after an X on the second qubit of the pair: flips the parity bit.
    pub fn after_x(self) -> Self {
        Self::new(self.j, self.k ^ 1)
    }

    /// Short name as used in serialized output, e.g. `b01`.
    pub fn code(self) -> String {
        format!("b{}{}", self.j, self.k)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let s = s
            .strip_prefix('b')
            .or_else(|| s.strip_prefix('β'))
            .unwrap_or(s);
        match s.as_bytes() {
            [a @ (b'0' | b'1'), b @ (b'0' | b'1')] => Some(Self::new(a - b'0', b - b'0')),
            _ => None,
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "β{}{}", self.j, self.k)
    }
}

/// `β00=(|00>+|11>)/√2, β10=(|00>-|11>)/√2, β01=(|01>+|10>)/√2, β11=(|01>-|10>)/√2`.
pub fn bell_state<T: Real>(label: BellLabel) -> StateVector<T> {
    let h = T::FRAC_1_SQRT_2();
    let sign = if label.j == 0 { h } else { -h };
    let mut amps = vec![Complex::zero(); 4];
    if label.k == 0 {
        amps[0b00] = cr(h);
        amps[0b11] = cr(sign);
    } else {
        amps[0b01] = cr(h);
        amps[0b10] = cr(sign);
    }
    StateVector::new(2, amps).expect("Bell states are normalized")
}

/// The Bell basis in [`BellLabel::ALL`] order.
pub fn bell_basis<T: Real>() -> [StateVector<T>; 4] {
    BellLabel::ALL.map(bell_state)
}

/// `Y ⊗ Y`, used for spin-flipped density matrices.
pub fn pauli_yy<T: Real>() -> Matrix<T> {
    let y = Matrix::from_vec(
        2,
        2,
        vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
    );
    y.kron(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevec::apply_unitary;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn re_rows(g: &Gate<f64>) -> Vec<f64> {
        g.matrix().as_slice().iter().map(|z| z.re).collect()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn rotation_values() {
        assert_eq!(re_rows(&rotation(0.0).unwrap()), vec![1.0, -0.0, 0.0, 1.0]);
        assert!(close(
            &re_rows(&rotation(FRAC_PI_2).unwrap()),
            &[0.0, -1.0, 1.0, 0.0],
            1e-16
        ));
        let h = FRAC_1_SQRT_2;
        assert!(close(
            &re_rows(&rotation(FRAC_PI_4).unwrap()),
            &[h, -h, h, h],
            1e-15
        ));
        assert!(matches!(rotation(f64::NAN), Err(Error::NonFiniteAngle(_))));
    }

    #[test]
    fn sp_values() {
        let h = FRAC_1_SQRT_2;
        assert!(close(
            &re_rows(&sp(FRAC_PI_4).unwrap()),
            &[h, h, h, -h],
            1e-15
        ));
        assert_eq!(re_rows(&sp(0.0).unwrap()), re_rows(&pauli_z()));
        let theta = (2.0f64.sqrt() / 3.0f64.sqrt()).acos();
        assert!(close(
            &re_rows(&sp(theta).unwrap()),
            &[0.816497, 0.577350, 0.577350, -0.816497],
            1e-6
        ));
        assert!(matches!(sp(f64::INFINITY), Err(Error::NonFiniteAngle(_))));
    }

    #[test]
    fn sp_is_r_times_z() {
        for theta in [-2.0, -0.3, 0.0, 0.7, 1.9, 3.1] {
            let prod = rotation(theta).unwrap().matrix() * pauli_z::<f64>().matrix();
            assert!(prod.max_abs_diff(sp(theta).unwrap().matrix()) < 1e-15);
            let s = sp(theta).unwrap();
            assert_eq!(s.matrix(), &s.matrix().adjoint());
        }
    }

    #[test]
    fn equality_entangler_action() {
        let v = equality_entangler::<f64>();
        let s01 = StateVector::<f64>::from_bits("01").unwrap();
        assert_eq!(apply_unitary(&s01, &v, &[1, 2]).unwrap(), s01);
        let out = apply_unitary(&StateVector::from_bits("00").unwrap(), &v, &[1, 2]).unwrap();
        assert!(out.max_abs_diff(&bell_state(BellLabel::new(0, 0))) < 1e-16);
        let out = apply_unitary(&StateVector::from_bits("11").unwrap(), &v, &[1, 2]).unwrap();
        assert!(out.max_abs_diff(&bell_state(BellLabel::new(1, 0))) < 1e-16);
        let sq = v.matrix() * v.matrix();
        assert!(sq.max_abs_diff(&Matrix::identity(4)) < 1e-15);
    }

    #[test]
    fn bell_basis_orthonormal() {
        let basis = bell_basis::<f64>();
        assert!(crate::statevec::orthonormality_residual(&basis) < 1e-15);
        let b01 = bell_state::<f64>(BellLabel::new(0, 1));
        assert!((b01.amplitude(0b01).re - FRAC_1_SQRT_2).abs() < 1e-16);
        assert!((b01.amplitude(0b10).re - FRAC_1_SQRT_2).abs() < 1e-16);
    }

    #[test]
    fn paulis() {
        let one = StateVector::<f64>::from_bits("1").unwrap();
        assert_eq!(
            apply_unitary(&one, &pauli(Pauli::X), &[1]).unwrap(),
            StateVector::from_bits("0").unwrap()
        );
        let zed = apply_unitary(&one, &pauli(Pauli::Z), &[1]).unwrap();
        assert_eq!(zed.amplitude(1).re, -1.0);
    }

    #[test]
    fn x_on_second_qubit_fixes_parity() {
        let x = pauli_x::<f64>();
        for label in [BellLabel::new(0, 0), BellLabel::new(1, 0)] {
            let out = apply_unitary(&bell_state(label), &x, &[2]).unwrap();
            assert!(
                out.max_abs_diff(&bell_state(label.after_x())) < 1e-16,
                "{label}"
            );
        }
        assert_eq!(BellLabel::new(0, 0).after_x(), BellLabel::new(0, 1));
        assert_eq!(BellLabel::new(1, 0).after_x(), BellLabel::new(1, 1));
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Matrix::from_vec(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        );
        assert!(matches!(
            Gate::<f64>::new("bad", m),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            Gate::<f64>::new("bad", Matrix::identity(3)),
            Err(Error::BadDimension(3))
        ));
    }

    #[test]
    fn label_codes() {
        for l in BellLabel::ALL {
            assert_eq!(BellLabel::parse(&l.code()), Some(l));
            assert_eq!(BellLabel::ALL[l.index()], l);
        }
        assert_eq!(BellLabel::parse("b2"), None);
    }

    #[test]
    fn f32_gates_are_unitary() {
        assert!(equality_entangler::<f32>().unitarity_residual() < 1e-6);
        assert!(sp::<f32>(0.3).unwrap().unitarity_residual() < 1e-6);
    }
}
