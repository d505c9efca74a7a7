//! Small dense complex matrices and the handful of factorizations the
//! simulator needs: Hermitian eigenvalues, Hermitian matrix square roots,
//! singular values and Gram-Schmidt completion.
//!
//! Hermitian problems are solved through the real symmetric embedding
//! `[[Re, -Im], [Im, Re]]`, which doubles every eigenvalue and commutes with
//! matrix functions, so one cyclic Jacobi routine serves all of them.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Complex<T>>]) -> Self {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged columns");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .fold(Complex::zero(), |acc, (&a, &x)| acc + a * x)
            })
            .collect()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm()))
    }

    /// `max |(M^† M - I)_{ij}|`.
    pub fn unitarity_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.rows))
    }

    /// `max |M_{ij} - conj(M_{ji})|`.
    pub fn hermiticity_residual(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        self.max_abs_diff(&self.adjoint())
    }
}

impl<T: Real> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    m[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

/// Cyclic Jacobi eigen-decomposition of a real symmetric `n x n` matrix
/// (row-major). Returns eigenvalues and the row-major eigenvector matrix whose
/// column `k` belongs to eigenvalue `k`.
fn symmetric_jacobi<T: Real>(mut a: Vec<T>, n: usize) -> (Vec<T>, Vec<T>) {
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    let eps = T::epsilon();
    let total: T = a.iter().fold(T::zero(), |acc, &x| acc + x * x);
    for _sweep in 0..100 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off <= eps * eps * total || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = cs * akp - sn * akq;
                    a[k * n + q] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = cs * apk - sn * aqk;
                    a[q * n + k] = sn * apk + cs * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = cs * vkp - sn * vkq;
                    v[k * n + q] = sn * vkp + cs * vkq;
                }
            }
        }
    }
    let eig = (0..n).map(|i| a[i * n + i]).collect();
    (eig, v)
}

fn real_embedding<T: Real>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let big = 2 * n;
    let mut e = vec![T::zero(); big * big];
    for i in 0..n {
        for j in 0..n {
            // symmetrize so rounding asymmetry in the input cannot leak in
            let z = (m[(i, j)] + m[(j, i)].conj()) * T::lit(0.5);
            e[i * big + j] = z.re;
            e[(i + n) * big + (j + n)] = z.re;
            e[(i + n) * big + j] = z.im;
            e[i * big + (j + n)] = -z.im;
        }
    }
    e
}

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
pub fn hermitian_eigenvalues<T: Real>(m: &Matrix<T>) -> Vec<T> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let n = m.rows();
    let (mut eig, _) = symmetric_jacobi(real_embedding(m), 2 * n);
    eig.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    // every eigenvalue of the embedding appears twice
    eig.into_iter().step_by(2).collect()
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn hermitian_function<T: Real>(m: &Matrix<T>, f: impl Fn(T) -> T) -> Matrix<T> {
    assert!(m.is_square(), "matrix function of a non-square matrix");
    let n = m.rows();
    let big = 2 * n;
    let (eig, v) = symmetric_jacobi(real_embedding(m), big);
    let fe: Vec<T> = eig.into_iter().map(f).collect();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut re = T::zero();
            let mut im = T::zero();
            for k in 0..big {
                re += v[i * big + k] * fe[k] * v[j * big + k];
                im += v[(i + n) * big + k] * fe[k] * v[j * big + k];
            }
            out[(i, j)] = Complex::new(re, im);
        }
    }
    out
}

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues below `cutoff` are treated as exactly zero.
pub fn psd_sqrt<T: Real>(m: &Matrix<T>, cutoff: T) -> Matrix<T> {
    hermitian_function(m, |x| if x > cutoff { x.sqrt() } else { T::zero() })
}

/// Singular values (descending) by one-sided Jacobi orthogonalization of the
/// columns. Small singular values are resolved to absolute precision, unlike
/// the square roots of the eigenvalues of `M^† M`.
pub fn singular_values<T: Real>(m: &Matrix<T>) -> Vec<T> {
    let cols = m.cols();
    let mut columns: Vec<Vec<Complex<T>>> = (0..cols).map(|j| m.column(j)).collect();
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: T = columns[p]
                    .iter()
                    .map(|z| z.norm_sqr())
                    .fold(T::zero(), |a, b| a + b);
                let beta: T = columns[q]
                    .iter()
                    .map(|z| z.norm_sqr())
                    .fold(T::zero(), |a, b| a + b);
                let gamma: Complex<T> = columns[p]
                    .iter()
                    .zip(&columns[q])
                    .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b);
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rephase column q so the overlap becomes real and positive
                let phase = gamma.conj() / g;
                for z in columns[q].iter_mut() {
                    *z *= phase;
                }
                let zeta = (beta - alpha) / (T::lit(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                let (lo, hi) = columns.split_at_mut(q);
                for (zp, zq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (ap, aq) = (*zp, *zq);
                    *zp = ap * cs - aq * sn;
                    *zq = ap * sn + aq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = columns
        .iter()
        .map(|col| {
            col.iter()
                .map(|z| z.norm_sqr())
                .fold(T::zero(), |a, b| a + b)
                .sqrt()
        })
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    sv
}

fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * y)
}

fn vnorm<T: Real>(a: &[Complex<T>]) -> T {
    a.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |s, x| s + x)
        .sqrt()
}

/// Extends a set of orthonormal vectors to an orthonormal basis of the
/// `dim`-dimensional space with modified Gram-Schmidt (two passes) over the
/// computational basis vectors, visited in the order given by `candidates`.
/// Returns only the new vectors, in the order they were produced.
pub fn complete_orthonormal<T: Real>(
    given: &[Vec<Complex<T>>],
    dim: usize,
    candidates: impl IntoIterator<Item = usize>,
) -> Option<Vec<Vec<Complex<T>>>> {
    let mut basis: Vec<Vec<Complex<T>>> = given.to_vec();
    let mut added = Vec::new();
    let threshold = T::lit(1e-6);
    for idx in candidates {
        if basis.len() == dim {
            break;
        }
        let mut v = vec![Complex::zero(); dim];
        v[idx] = Complex::one();
        for _pass in 0..2 {
            for b in &basis {
                let proj = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = vnorm(&v);
        if nrm < threshold {
            continue;
        }
        for x in v.iter_mut() {
            *x /= nrm;
        }
        basis.push(v.clone());
        added.push(v);
    }
    (basis.len() == dim).then_some(added)
}
