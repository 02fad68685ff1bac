//! Dense exact matrices over arbitrary-precision integers and rationals.
//!
//! Determinants use Bareiss fraction-free elimination and inverses use the
//! fraction-free Gauss-Jordan variant, so every intermediate value is an
//! integer and every division is exact. Rational inputs are first scaled row
//! by row to clear denominators.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntMatrix = Matrix<BigInt>;
pub type RationalMatrix = Matrix<BigRational>;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Removes the listed rows and columns, keeping the survivors in their
    /// original order. Repeated indices are treated as a set.
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let keep_rows = survivors(self.rows, rows)?;
        let keep_cols = survivors(self.cols, cols)?;
        Ok(Self::from_fn(keep_rows.len(), keep_cols.len(), |i, j| {
            self[(keep_rows[i], keep_cols[j])].clone()
        }))
    }

    /// Shorthand for deleting the same index set from rows and columns.
    pub fn delete_symmetric(&self, indices: &[usize]) -> Result<Self> {
        self.delete(indices, indices)
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }
}

fn survivors(len: usize, removed: &[usize]) -> Result<Vec<usize>> {
    let mut drop = vec![false; len];
    for &index in removed {
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
        drop[index] = true;
    }
    Ok((0..len).filter(|&i| !drop[i]).collect())
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Matrix with every entry equal to one, i.e. `𝟙𝟙ᵀ`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::one())
    }

    pub fn outer(u: &[T], v: &[T]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i].clone() * v[j].clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok(self
            .iter_rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// `uᵀ M v`.
    pub fn quadratic_form(&self, u: &[T], v: &[T]) -> Result<T> {
        if u.len() != self.rows {
            return Err(Error::ShapeMismatch {
                left: (1, u.len()),
                right: self.shape(),
            });
        }
        let mv = self.matvec(v)?;
        Ok(u
            .iter()
            .zip(&mv)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self>
    where
        T: std::ops::Sub<Output = T>,
    {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn to_rational(&self) -> RationalMatrix {
        self.map(|a| BigRational::from_integer(a.clone()))
    }

    /// Bareiss fraction-free determinant. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        Ok(bareiss(self.data.clone(), self.rows))
    }

    pub fn inverse(&self) -> Result<RationalMatrix> {
        self.require_square()?;
        let (adj, det) = gauss_jordan_adjugate(self.data.clone(), self.rows)?;
        let det = BigRational::from_integer(det);
        Ok(adj.map(|a| BigRational::from_integer(a.clone()) / det.clone()))
    }
}

impl RationalMatrix {
    /// Exact determinant. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<BigRational> {
        self.require_square()?;
        let (ints, scales) = clear_denominators(self);
        let det = bareiss(ints, self.rows);
        let scale = scales.into_iter().fold(BigInt::one(), |acc, s| acc * s);
        Ok(BigRational::new(det, scale))
    }

    /// Exact inverse; singular input yields [`Error::Singular`].
    pub fn inverse(&self) -> Result<RationalMatrix> {
        self.require_square()?;
        let n = self.rows;
        // Row i of the integer matrix is d_i times row i of self, so
        // self⁻¹ = (D·self)⁻¹·D.
        let (ints, scales) = clear_denominators(self);
        let (adj, det) = gauss_jordan_adjugate(ints, n)?;
        Ok(Matrix::from_fn(n, n, |i, j| {
            BigRational::new(&adj[(i, j)] * &scales[j], det.clone())
        }))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|a| a.is_integer())
    }
}

fn clear_denominators(m: &RationalMatrix) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut ints = Vec::with_capacity(m.data.len());
    let mut scales = Vec::with_capacity(m.rows);
    for row in m.iter_rows() {
        let scale = row
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        for a in row {
            ints.push(a.numer() * (&scale / a.denom()));
        }
        scales.push(scale);
    }
    (ints, scales)
}

fn bareiss(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(i) => {
                    swap_rows(&mut a, n, k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let factor = a[i * n + k].clone();
            for j in k + 1..n {
                let value = &pivot * &a[i * n + j] - &factor * &a[k * n + j];
                a[i * n + j] = value / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Fraction-free Gauss-Jordan on `[A | I]`. On completion the left block is
/// `d·I` and the right block is `d·A⁻¹`, where `d` is the determinant of the
/// row-permuted `A`. Returns the right block and `d`.
fn gauss_jordan_adjugate(a: Vec<BigInt>, n: usize) -> Result<(IntMatrix, BigInt)> {
    if n == 0 {
        return Ok((Matrix::zeros(0, 0), BigInt::one()));
    }
    let w = 2 * n;
    let mut aug = vec![BigInt::zero(); n * w];
    for i in 0..n {
        aug[i * w..i * w + n].clone_from_slice(&a[i * n..(i + 1) * n]);
        aug[i * w + n + i] = BigInt::one();
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        if aug[k * w + k].is_zero() {
            let i = (k + 1..n)
                .find(|&i| !aug[i * w + k].is_zero())
                .ok_or(Error::Singular)?;
            swap_rows(&mut aug, w, k, i);
        }
        let pivot = aug[k * w + k].clone();
        for i in (0..n).filter(|&i| i != k) {
            let factor = aug[i * w + k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let value = &pivot * &aug[i * w + j] - &factor * &aug[k * w + j];
                debug_assert!((&value % &prev).is_zero(), "inexact Gauss-Jordan division");
                aug[i * w + j] = value / &prev;
            }
            aug[i * w + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = prev;
    let mut right = Matrix::zeros(n, n);
    for i in 0..n {
        debug_assert_eq!(aug[i * w + i], det);
        for j in 0..n {
            right[(i, j)] = std::mem::take(&mut aug[i * w + n + j]);
        }
    }
    if det.is_negative() {
        Ok((right.map(|x| -x), -det))
    } else {
        Ok((right, det))
    }
}

fn swap_rows<T>(a: &mut [T], width: usize, r: usize, s: usize) {
    let (lo, hi) = (r.min(s), r.max(s));
    let (head, tail) = a.split_at_mut(hi * width);
    head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
}

/// Integer vector/matrix helpers used when promoting counts to rationals.
pub fn rational(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(n, m, |i, j| BigInt::from(rows[i][j]))
    }

    #[test]
    fn empty_determinant_is_one() {
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), BigInt::one());
    }

    #[test]
    fn identity_determinant() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), BigInt::one());
    }

    #[test]
    fn non_square_rejected() {
        assert_eq!(
            IntMatrix::zeros(2, 3).det(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        );
        assert!(RationalMatrix::zeros(3, 2).inverse().is_err());
    }

    #[test]
    fn needs_pivoting() {
        let m = int_matrix(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.det().unwrap(), BigInt::from(-2));
        let inv = m.to_rational().inverse().unwrap();
        assert_eq!(
            m.to_rational().matmul(&inv).unwrap(),
            RationalMatrix::identity(3)
        );
    }

    #[test]
    fn singular_inverse_reported() {
        let m = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det().unwrap(), BigInt::zero());
        assert_eq!(m.to_rational().inverse(), Err(Error::Singular));
    }

    #[test]
    fn delete_rows_and_columns() {
        let id = IntMatrix::identity(3);
        assert_eq!(id.delete(&[0], &[0]).unwrap(), IntMatrix::identity(2));
        assert_eq!(id.delete(&[], &[]).unwrap(), id);
        assert_eq!(
            id.delete(&[3], &[]),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
        let m = int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(m.delete(&[1], &[0]).unwrap(), int_matrix(&[&[2, 3], &[8, 9]]));
    }

    #[test]
    fn rational_determinant_and_inverse() {
        let m = Matrix::from_vec(
            2,
            2,
            vec![ratio(1, 2), ratio(1, 3), ratio(1, 4), ratio(1, 5)],
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), ratio(1, 10) - ratio(1, 12));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv).unwrap(), RationalMatrix::identity(2));
        assert_eq!(inv.inverse().unwrap(), m);
    }

    #[test]
    fn quadratic_form_and_shapes() {
        let a = int_matrix(&[&[0, 1], &[1, 0]]).to_rational();
        let half = vec![ratio(1, 2), ratio(1, 2)];
        assert_eq!(a.quadratic_form(&half, &half).unwrap(), ratio(1, 2));
        assert!(a.matvec(&[rational(1)]).is_err());
        assert!(a.matmul(&RationalMatrix::zeros(3, 1)).is_err());
    }
}
