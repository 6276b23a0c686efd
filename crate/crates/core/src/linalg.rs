//! Exact dense linear algebra over a [`FieldSpec`].

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A row-major matrix whose entries all belong to one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    /// Checks that every row has `cols` entries from `field`.
    pub fn new(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            if let Some(bad) = row.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
            }
        }
        Ok(Matrix { field, cols, rows })
    }

    /// Infers field and width from the first row.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let first = rows.first().and_then(|r| r.first()).ok_or(Error::Empty)?;
        let field = first.field();
        let cols = rows[0].len();
        Matrix::new(field, cols, rows)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Matrix { field, cols: n, rows }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.rows
    }

    /// Reduced row-echelon form. Pivots are the leftmost nonzero column, taken
    /// from the first eligible row, and normalized to 1.
    pub fn rref(&self) -> Rref {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, pr);
            let inv = m[r][c].inv().expect("pivot nonzero");
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &(&factor * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: Matrix { field: self.field, cols: self.cols, rows: m },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : M x = 0}`, one vector per free column in increasing
    /// column order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &pc) in matrix.rows.iter().zip(&pivots) {
                    v[pc] = -&row[f];
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        let augmented: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                r
            })
            .collect();
        let red = Matrix { field: self.field, cols: 2 * n, rows: augmented }.rref();
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = red.matrix.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix { field: self.field, cols: n, rows })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows.iter().map(|row| dot(self.field, row, v)).collect()
    }
}

/// Dot product of two equal-length vectors.
pub fn dot(field: FieldSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(field.zero(), |mut acc, (x, y)| {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
        acc
    })
}
