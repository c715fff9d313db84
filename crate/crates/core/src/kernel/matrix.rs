use super::Point;
use crate::{GeomError, Result};

/// An n×m real matrix stored as its m columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    columns: Vec<Point>,
}

impl Matrix {
    pub fn from_columns(rows: usize, columns: Vec<Point>) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.dim() != rows) {
            return Err(GeomError::DimensionMismatch { expected: rows, got: c.dim() });
        }
        Ok(Matrix { rows, columns })
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, columns: (0..n).map(|i| Point::basis(n, i)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Point] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Point {
        &self.columns[j]
    }

    /// Columns `start..end` as a new matrix.
    pub fn block(&self, start: usize, end: usize) -> Matrix {
        Matrix { rows: self.rows, columns: self.columns[start..end].to_vec() }
    }

    /// X·c for a coefficient vector c ∈ ℝᵐ.
    pub fn apply(&self, c: &[f64]) -> Point {
        let mut out = vec![0.0; self.rows];
        for (col, &w) in self.columns.iter().zip(c) {
            if w != 0.0 {
                for (o, x) in out.iter_mut().zip(col.coords()) {
                    *o += w * x;
                }
            }
        }
        Point(out)
    }

    /// Xᵀu.
    pub fn transpose_apply(&self, u: &[f64]) -> Vec<f64> {
        self.columns.iter().map(|c| c.dot(u)).collect()
    }

    /// Horizontal concatenation [A B].
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if other.rows != self.rows {
            return Err(GeomError::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(Matrix { rows: self.rows, columns })
    }
}
