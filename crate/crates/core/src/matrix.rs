//! Dense matrices over a finite field.
//!
//! Matrices do not carry their field; every operation that does arithmetic
//! takes the [`FieldSpec`] explicitly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fq::ONE;
        }
        m
    }

    pub fn diagonal(entries: &[Fq]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Fq>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Fq>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from small integers reduced into the prime subfield.
    pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Fq>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Self::from_rows(cols, &rows)
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

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fq] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fq]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn as_slice(&self) -> &[Fq] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let ot = other.transpose();
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = field.dot(self.row(i), ot.row(j));
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, field: &FieldSpec, v: &[Fq]) -> Result<Vec<Fq>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.row_iter().map(|r| field.dot(r, v)).collect())
    }

    /// `Pᵀ · self · P`.
    pub fn congruence(&self, field: &FieldSpec, p: &Matrix) -> Result<Matrix> {
        p.transpose().mul(field, &self.mul(field, p)?)
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    /// Zero rows end up at the bottom.
    pub fn rref_in_place(&mut self, field: &FieldSpec) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = field.inv(self[(r, c)]).expect("pivot is nonzero");
            for x in self.row_mut(r) {
                *x = field.mul(*x, inv);
            }
            for i in 0..self.rows {
                let factor = self[(i, c)];
                if i != r && !factor.is_zero() {
                    for j in c..self.cols {
                        let sub = field.mul(factor, self[(r, j)]);
                        self[(i, j)] = field.sub(self[(i, j)], sub);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// RREF with zero rows dropped, plus pivot columns.
    pub fn rref(&self, field: &FieldSpec) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(field);
        m.data.truncate(pivots.len() * m.cols);
        m.rows = pivots.len();
        (m, pivots)
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.clone().rref_in_place(field).len()
    }

    /// Basis (as rows) of `{x : self · x = 0}`.
    pub fn null_space(&self, field: &FieldSpec) -> Matrix {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (b, &f) in free.iter().enumerate() {
            out[(b, f)] = Fq::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                out[(b, pc)] = field.neg(r[(i, f)]);
            }
        }
        out
    }

    pub fn inverse(&self, field: &FieldSpec) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug[(i, n + i)] = Fq::ONE;
        }
        let pivots = aug.rref_in_place(field);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Ok(inv)
    }

    pub fn display(&self, field: &FieldSpec) -> String {
        let mut s = String::from("[");
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                s.push_str("; ");
            }
            let cells: Vec<String> = r.iter().map(|&a| field.format(a)).collect();
            let _ = write!(s, "{}", cells.join(" "));
        }
        s.push(']');
        s
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Fq;

    fn index(&self, (i, j): (usize, usize)) -> &Fq {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fq {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_null_space() {
        let f = FieldSpec::prime(3).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 1, 0], &[2, 2, 1]]).unwrap();
        let (r, piv) = m.rref(&f);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(r, Matrix::from_ints(&f, &[&[1, 1, 0], &[0, 0, 1]]).unwrap());
        let ns = m.null_space(&f);
        assert_eq!(ns.rows(), 1);
        assert!(m
            .mul_vec(&f, ns.row(0))
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_round_trip() {
        let f = FieldSpec::prime(5).unwrap();
        let m = Matrix::from_ints(&f, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv).unwrap(), Matrix::identity(3));
        let singular = Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.inverse(&f).is_err());
    }
}
