//! Dense column-major matrix storage.
//!
//! Both problem formulations treat the matrix as a bag of columns (one column
//! per candidate atom / data point), so columns are stored contiguously and
//! exposed as slices.

use crate::error::Error;
use crate::linalg;

/// Dense matrix with columns stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemMatrix {
    rows: usize,
    cols: usize,
    /// Column-major buffer of length `rows * cols`.
    data: Vec<f64>,
}

impl ProblemMatrix {
    /// All-zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Build from a column-major buffer of length `rows * cols`.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "buffer has {} entries, expected {} ({} x {})",
                data.len(),
                rows * cols,
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from columns; every column must have the same length.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self, Error> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows * cols);
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {} has length {}, expected {}",
                    j,
                    c.len(),
                    rows
                )));
            }
            data.extend_from_slice(c);
        }
        Ok(Self { rows, cols, data })
    }

    /// Build from rows; every row must have the same length.
    pub fn from_rows(rows_in: &[Vec<f64>]) -> Result<Self, Error> {
        let rows = rows_in.len();
        let cols = rows_in.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (i, r) in rows_in.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                m.data[j * rows + i] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column `j` as a slice.
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Mutable column `j`.
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.rows + i]
    }

    /// Set entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[j * self.rows + i] = v;
    }

    /// Row `i` collected into a fresh vector.
    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// Matrix-vector product `A x` (`x` has one entry per column).
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols, "matvec length mismatch");
        let mut out = vec![0.0; self.rows];
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0.0 {
                linalg::axpy(xj, self.col(j), &mut out);
            }
        }
        out
    }

    /// Transposed product `A^T y` (`y` has one entry per row).
    pub fn tmatvec(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.rows, "tmatvec length mismatch");
        (0..self.cols).map(|j| linalg::dot(self.col(j), y)).collect()
    }

    /// Inner product of column `j` with `y`.
    pub fn col_dot(&self, j: usize, y: &[f64]) -> f64 {
        linalg::dot(self.col(j), y)
    }

    /// Squared Euclidean norms of all columns.
    pub fn col_norms_sq(&self) -> Vec<f64> {
        (0..self.cols).map(|j| linalg::sumsq(self.col(j))).collect()
    }

    /// Largest column norm.
    pub fn max_col_norm(&self) -> f64 {
        self.col_norms_sq()
            .into_iter()
            .fold(0.0_f64, f64::max)
            .sqrt()
    }

    /// Column Gram matrix `A^T A`, row-major `cols x cols`.
    pub fn gram(&self) -> Vec<f64> {
        let n = self.cols;
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = linalg::dot(self.col(i), self.col(j));
                g[i * n + j] = v;
                g[j * n + i] = v;
            }
        }
        g
    }

    /// New matrix keeping only the listed columns, in the given order.
    pub fn keep_columns(&self, keep: &[usize]) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(self.rows * keep.len());
        for &j in keep {
            if j >= self.cols {
                return Err(Error::InvalidArgument(format!(
                    "column index {} out of range (matrix has {} columns)",
                    j, self.cols
                )));
            }
            data.extend_from_slice(self.col(j));
        }
        Ok(Self {
            rows: self.rows,
            cols: keep.len(),
            data,
        })
    }

    /// Scale every entry in place.
    pub fn scale(&mut self, factor: f64) {
        self.data.iter_mut().for_each(|v| *v *= factor);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ProblemMatrix {
        // Columns (1,3), (2,4): row-major [[1,2],[3,4]].
        ProblemMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap()
    }

    #[test]
    fn construction_routes_agree() {
        let a = sample();
        let b = ProblemMatrix::from_columns(&[vec![1.0, 3.0], vec![2.0, 4.0]]).unwrap();
        let c = ProblemMatrix::from_col_major(2, 2, vec![1.0, 3.0, 2.0, 4.0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.get(0, 1), 2.0);
        assert_eq!(a.row(1), vec![3.0, 4.0]);
    }

    #[test]
    fn ragged_input_is_rejected() {
        assert!(ProblemMatrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(ProblemMatrix::from_columns(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(ProblemMatrix::from_col_major(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn products() {
        let a = sample();
        assert_eq!(a.matvec(&[1.0, 1.0]), vec![3.0, 7.0]);
        assert_eq!(a.tmatvec(&[1.0, 1.0]), vec![4.0, 6.0]);
        assert_eq!(a.col_dot(0, &[1.0, 1.0]), 4.0);
    }

    #[test]
    fn norms_and_gram() {
        let a = sample();
        assert_eq!(a.col_norms_sq(), vec![10.0, 20.0]);
        assert!((a.max_col_norm() - 20.0_f64.sqrt()).abs() < 1e-15);
        // Gram = [[10, 14], [14, 20]].
        assert_eq!(a.gram(), vec![10.0, 14.0, 14.0, 20.0]);
    }

    #[test]
    fn keep_columns_selects_and_reorders() {
        let a = sample();
        let b = a.keep_columns(&[1, 0]).unwrap();
        assert_eq!(b.col(0), &[2.0, 4.0]);
        assert_eq!(b.col(1), &[1.0, 3.0]);
        assert!(a.keep_columns(&[2]).is_err());
    }
}
