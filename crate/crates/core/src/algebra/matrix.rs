use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::field::{FieldElement, PrimeField};
use crate::error::{Error, Result};

/// A dense `rows x cols` matrix over F_p, entries stored row-major as
/// reduced residues.
///
/// Ordering is lexicographic on the entry tuple once shape and field agree,
/// which is what gives ideals and codes their canonical sorted order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    data: Vec<u32>,
}

impl Matrix {
    /// Builds a matrix from row-major residues, each of which must be in `[0, p)`.
    pub fn new(rows: usize, cols: usize, field: PrimeField, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= field.p()) {
            return Err(Error::ValueOutOfRange {
                value: bad as u64,
                p: field.p(),
            });
        }
        Ok(Self {
            rows,
            cols,
            field,
            data: entries,
        })
    }

    /// Like [`Matrix::new`] but reduces arbitrary integers mod p.
    pub fn from_ints(rows: usize, cols: usize, field: PrimeField, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        let data = entries.iter().map(|&v| field.reduce(v).value()).collect();
        Ok(Self {
            rows,
            cols,
            field,
            data,
        })
    }

    /// Convenience for literals: `Matrix::from_rows(f, &[&[0, 1], &[0, 0]])`.
    pub fn from_rows(field: PrimeField, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut flat = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::EntryCount {
                    expected: cols,
                    got: r.len(),
                });
            }
            flat.extend_from_slice(r);
        }
        Self::from_ints(rows.len(), cols, field, &flat)
    }

    pub fn zero(rows: usize, cols: usize, field: PrimeField) -> Self {
        Self {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Every `rows x cols` matrix over the field, in lexicographic entry
    /// order (first entry most significant).
    pub fn enumerate(rows: usize, cols: usize, field: PrimeField) -> MatrixIter {
        MatrixIter {
            next: Some(Self::zero(rows, cols, field)),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Row-major residues.
    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn element(&self, r: usize, c: usize) -> FieldElement {
        self.field.reduce(self.get(r, c) as i64)
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.shape() != other.shape() {
            return Err(self.shape_error(other));
        }
        Ok(())
    }

    fn shape_error(&self, other: &Self) -> Error {
        Error::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u32, u32) -> u32) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(Self {
            data,
            ..self.clone()
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add_raw(a, b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub_raw(a, b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.cols != other.rows {
            return Err(self.shape_error(other));
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut data = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for t in 0..self.cols {
                    acc += self.get(i, t) as u64 * other.get(t, j) as u64;
                    // p < 2^15 so each product is < 2^30; reduce well before overflow.
                    if t % 1024 == 1023 {
                        acc %= p;
                    }
                }
                data[i * other.cols + j] = (acc % p) as u32;
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            field: f,
            data,
        })
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let c = c % f.p();
        Self {
            data: self.data.iter().map(|&a| f.mul_raw(a, c)).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.rows != other.rows {
            return Err(self.shape_error(other));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            field: self.field,
            data,
        })
    }

    /// `self` stacked on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            });
        }
        if self.cols != other.cols {
            return Err(self.shape_error(other));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.cols);
        let mut data = Vec::with_capacity(self.rows * (end - start));
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[start..end]);
        }
        Self {
            rows: self.rows,
            cols: end - start,
            field: self.field,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// The pivot in each column is the first row (at or below the current
    /// position) holding a nonzero entry. Zero rows are kept at the bottom.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = f.inv_raw(m.get(lead, col));
            for c in 0..m.cols {
                let v = m.get(lead, c);
                m.data[lead * m.cols + c] = f.mul_raw(v, inv);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = f.mul_raw(factor, m.get(lead, c));
                    let v = m.get(r, c);
                    m.data[r * m.cols + c] = f.sub_raw(v, sub);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Drops the last `rows - keep` rows.
    pub(crate) fn truncate_rows(mut self, keep: usize) -> Self {
        self.data.truncate(keep * self.cols);
        self.rows = keep;
        self
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Nested row vectors, handy for reports.
    pub fn to_row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/F{}", self.to_row_vecs(), self.field.p())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for r in 0..self.rows {
            seq.serialize_element(self.row(r))?;
        }
        seq.end()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: Self) -> Matrix {
        self.checked_add(rhs).expect("matrix addition")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Self) -> Matrix {
        self.checked_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Self) -> Matrix {
        self.checked_mul(rhs).expect("matrix multiplication")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let f = self.field;
        Matrix {
            data: self.data.iter().map(|&a| f.neg_raw(a)).collect(),
            ..self.clone()
        }
    }
}

/// Odometer over all matrices of a fixed shape.
pub struct MatrixIter {
    next: Option<Matrix>,
}

impl Iterator for MatrixIter {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let p = succ.field.p();
        let mut carried = true;
        for v in succ.data.iter_mut().rev() {
            *v += 1;
            if *v < p {
                carried = false;
                break;
            }
            *v = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}
