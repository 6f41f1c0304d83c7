//! Dense vectors, small square matrices and the radial/orthogonal split of a
//! vector relative to a nonzero base.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};

/// A dense, finite, nonempty real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and NaN/Inf entries.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Vector(entries))
    }

    pub fn from_slice(entries: &[f64]) -> Result<Self> {
        Self::new(entries.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "vector dimension must be positive");
        Vector(vec![0.0; dim])
    }

    /// The `j`-th standard basis vector of R^dim.
    pub fn basis(dim: usize, j: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[j] = 1.0;
        v
    }

    /// Wraps the result of arithmetic on already-validated vectors.
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(!entries.is_empty());
        Vector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    pub(crate) fn check_dim(&self, other: &Vector) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.len(), found: other.len() })
        }
    }

    pub fn dot(&self, other: &Vector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(dot(&self.0, &other.0))
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn norm_squared(&self) -> f64 {
        dot(&self.0, &self.0)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, alpha: f64) -> Vector {
        self.map(|a| alpha * a)
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &Vector) -> Result<Vector> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + alpha * b))
    }

    pub fn neg(&self) -> Vector {
        self.map(|a| -a)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Vector) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    pub(crate) fn map(&self, f: impl Fn(f64) -> f64) -> Vector {
        Vector(self.0.iter().map(|&a| f(a)).collect())
    }

    pub(crate) fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// Coefficient of `u` along `x`: `<x, u> / |x|^2`.
pub fn radial_coefficient(x: &Vector, u: &Vector) -> Result<f64> {
    x.check_dim(u)?;
    let nx2 = x.norm_squared();
    if nx2 == 0.0 {
        return Err(Error::ZeroBase);
    }
    Ok(dot(&x.0, &u.0) / nx2)
}

/// Component of `u` orthogonal to `x`: `u - radial_coefficient(x, u) * x`.
pub fn orthogonal_part(x: &Vector, u: &Vector) -> Result<Vector> {
    let a = radial_coefficient(x, u)?;
    Ok(u.zip_with(x, |ui, xi| ui - a * xi))
}

/// A square, row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `rows.len()` and
    /// all entries must be finite.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Matrix { dim, data })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub(crate) fn from_columns(columns: &[Vector]) -> Self {
        let dim = columns.len();
        let mut m = Self::zeros(dim);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn mul_vec(&self, u: &Vector) -> Result<Vector> {
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.len() });
        }
        Ok(Vector::from_raw(
            self.data.chunks(self.dim).map(|row| dot(row, u.as_slice())).collect(),
        ))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { dim: self.dim, data })
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Max-entry relative error against `reference`:
    /// `max |a_ij - b_ij| / max |b_ij|`, with the denominator floored at 1e-12.
    pub fn max_relative_error(&self, reference: &Matrix) -> Result<f64> {
        let diff = self.sub(reference)?;
        Ok(diff.max_abs() / reference.max_abs().max(1e-12))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> Vector {
        Vector::from_slice(x).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Vector::new(vec![]), Err(Error::Empty));
        assert_eq!(Vector::new(vec![1.0, f64::NAN]), Err(Error::NonFinite { index: 1 }));
        assert_eq!(Vector::new(vec![f64::NEG_INFINITY]), Err(Error::NonFinite { index: 0 }));
        assert_eq!(
            v(&[1.0, 2.0]).add(&v(&[1.0])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn radial_coefficient_examples() {
        assert_eq!(radial_coefficient(&v(&[2.0, 0.0]), &v(&[2.0, 0.0])).unwrap(), 1.0);
        assert_eq!(radial_coefficient(&v(&[1.0, 0.0]), &v(&[0.0, 5.0])).unwrap(), 0.0);
        // <(3,4),(1,1)> = 7, |(3,4)|^2 = 25.
        let a = radial_coefficient(&v(&[3.0, 4.0]), &v(&[1.0, 1.0])).unwrap();
        let oracle = (3.0 * 1.0 + 4.0 * 1.0) / (3.0 * 3.0 + 4.0 * 4.0);
        assert_eq!(a, oracle);
        assert!((a - 7.0 / 25.0).abs() < 1e-16);
        assert_eq!(radial_coefficient(&v(&[0.0, 0.0]), &v(&[1.0, 1.0])), Err(Error::ZeroBase));
    }

    #[test]
    fn orthogonal_part_examples() {
        assert_eq!(orthogonal_part(&v(&[1.0, 0.0]), &v(&[1.0, 0.0])).unwrap(), v(&[0.0, 0.0]));
        assert_eq!(orthogonal_part(&v(&[1.0, 0.0]), &v(&[3.0, 4.0])).unwrap(), v(&[0.0, 4.0]));
        let x = v(&[3.0, 4.0]);
        let o = orthogonal_part(&x, &v(&[1.0, 1.0])).unwrap();
        assert!((o[0] - 4.0 / 25.0).abs() < 1e-15 && (o[1] + 3.0 / 25.0).abs() < 1e-15);
        assert!(x.dot(&o).unwrap().abs() < 1e-15);
        assert_eq!(orthogonal_part(&v(&[0.0]), &v(&[1.0])), Err(Error::ZeroBase));
    }

    #[test]
    fn matrix_helpers() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(a.transpose().rows(), vec![vec![1.0, 3.0], vec![2.0, 4.0]]);
        assert_eq!(a.mul_vec(&v(&[1.0, 1.0])).unwrap(), v(&[3.0, 7.0]));
        assert_eq!(a.asymmetry(), 1.0);
        assert_eq!(a.matmul(&Matrix::identity(2)).unwrap(), a);
        assert!(Matrix::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
        assert!(Matrix::from_rows(&[vec![f64::NAN]]).is_err());
        assert_eq!(a.max_relative_error(&a).unwrap(), 0.0);
        assert_eq!(Matrix::zeros(2).max_relative_error(&Matrix::zeros(2)).unwrap(), 0.0);
    }
}
