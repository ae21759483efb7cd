//! Dense integer matrices with checked 64-bit arithmetic.
//!
//! Every arithmetic path reports [`Error::IntegerOverflow`] instead of
//! wrapping. Determinants go through fraction-free (Bareiss) elimination in
//! 128-bit intermediates and are narrowed back to `i64` with a check.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntegerMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(bad) = rows.iter().position(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {cols}",
                rows[bad].as_ref().len()
            )));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m[(i, i)] = 1;
        }
        Ok(m)
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)]);
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols)?;
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i64 = 0;
                for l in 0..self.cols {
                    let term = self[(i, l)]
                        .checked_mul(rhs[(l, j)])
                        .ok_or(Error::IntegerOverflow("matrix product"))?;
                    acc = acc
                        .checked_add(term)
                        .ok_or(Error::IntegerOverflow("matrix product"))?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                rhs.rows, rhs.cols, self.rows, self.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::IntegerOverflow("matrix difference")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[&Self]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("cannot stack zero blocks".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "stacked blocks have {} and {} columns",
                    cols, b.cols
                )));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Self::new(rows, cols, data)
    }

    /// Minor selecting the given (sorted or not) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self[(r, c)])
            .collect();
        Self::new(rows.len(), cols.len(), data)
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        determinant_i128(self.rows, self.data.iter().map(|&x| x as i128).collect())
    }

    pub(crate) fn data_mut(&mut self) -> &mut [i64] {
        &mut self.data
    }
}

pub(crate) fn determinant_i128(n: usize, mut a: Vec<i128>) -> Result<i64> {
    const OVF: Error = Error::IntegerOverflow("determinant");
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Ok(0);
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[i * n + j].checked_mul(pivot).ok_or(OVF)?;
                let rhs = a[i * n + k].checked_mul(a[k * n + j]).ok_or(OVF)?;
                a[i * n + j] = lhs.checked_sub(rhs).ok_or(OVF)? / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    let det = if n == 0 { 1 } else { a[n * n - 1] * sign };
    i64::try_from(det).map_err(|_| OVF)
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = i64;

    fn index(&self, (r, c): (usize, usize)) -> &i64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut i64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}
