//! Dense square matrices over a [`FieldSpec`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::echelon::Echelon;

/// An n×n matrix with row-major entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    n: usize,
    entries: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(field: &FieldSpec, n: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            n,
            entries: vec![Elem::ZERO; n * n],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Matrix {
        Matrix::scalar(field, n, Elem::ONE)
    }

    pub fn scalar(field: &FieldSpec, n: usize, c: Elem) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    /// The elementary matrix with a single 1 at (i, j), zero-based.
    pub fn elementary(field: &FieldSpec, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        m.set(i, j, Elem::ONE);
        m
    }

    pub fn diag(field: &FieldSpec, d: &[Elem]) -> Matrix {
        let mut m = Matrix::zero(field, d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// Builds a matrix from row-major entries, checking length and range.
    pub fn from_entries(field: &FieldSpec, n: usize, entries: Vec<Elem>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.code() >= field.q()) {
            return Err(Error::InvalidElement {
                code: bad.code(),
                q: field.q(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    /// Builds a matrix from rows of element codes.
    pub fn from_codes(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Matrix> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            for &c in r {
                entries.push(field.elem(c)?);
            }
        }
        Matrix::from_entries(field, n, entries)
    }

    /// Builds a matrix from rows of integers read in the prime subfield.
    /// Convenient for literal matrices with entries like -1.
    pub fn from_ints<const N: usize>(field: &FieldSpec, rows: [[i64; N]; N]) -> Matrix {
        let entries = rows.iter().flatten().map(|&x| field.from_int(x)).collect();
        Matrix {
            field: field.clone(),
            n: N,
            entries,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Elem> {
        self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows_codes(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|e| e.code()).collect())
            .collect()
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &FieldSpec, cols: &[Vec<Elem>]) -> Matrix {
        let n = cols.len();
        let mut m = Matrix::zero(field, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Same field and size, or the matching error.
    pub fn check_compatible(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.check_compatible(other).is_ok());
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.check_compatible(other).is_ok());
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert!(self.check_compatible(other).is_ok());
        let f = &self.field;
        let n = self.n;
        let mut out = vec![Elem::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let o = &mut out[i * n + j];
                    *o = f.add(*o, f.mul(a, other.entries[k * n + j]));
                }
            }
        }
        Matrix {
            field: f.clone(),
            n,
            entries: out,
        }
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        (0..self.n)
            .map(|i| crate::linalg::echelon::dot(&self.field, self.row(i), v))
            .collect()
    }

    pub fn pow(&self, e: u32) -> Matrix {
        (0..e).fold(Matrix::identity(&self.field, self.n), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(&self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn trace(&self) -> Elem {
        (0..self.n).fold(Elem::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(&self.field, self.n, (0..self.n).map(|i| self.row(i).to_vec())).rank()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Elem {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Elem::ZERO;
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let f = &self.field;
        let n = self.n;
        let w = 2 * n;
        let mut a = vec![Elem::ZERO; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(self.row(i));
            a[i * w + n + i] = Elem::ONE;
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r * w + c].is_zero())?;
            if p != c {
                for j in 0..w {
                    a.swap(p * w + j, c * w + j);
                }
            }
            let inv = f.inv(a[c * w + c]).expect("pivot is nonzero");
            for j in 0..w {
                a[c * w + j] = f.mul(inv, a[c * w + j]);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = a[r * w + c];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..w {
                    a[r * w + j] = f.sub(a[r * w + j], f.mul(factor, a[c * w + j]));
                }
            }
        }
        let entries = (0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect();
        Some(Matrix {
            field: f.clone(),
            n,
            entries,
        })
    }

    /// P M P⁻¹ given both P and its inverse.
    pub fn conjugate_by(&self, p: &Matrix, p_inv: &Matrix) -> Matrix {
        p.mul(self).mul(p_inv)
    }

    /// Block-diagonal matrix diag(a, b).
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.n + b.n;
        let mut m = Matrix::zero(&a.field, n);
        for i in 0..a.n {
            for j in 0..a.n {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                m.set(a.n + i, a.n + j, b.get(i, j));
            }
        }
        m
    }

    /// The square sub-block with rows and columns in `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> Matrix {
        let k = idx.len();
        let mut m = Matrix::zero(&self.field, k);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// Base-q integer code of the row-major entries (first entry least significant).
    pub fn index_code(&self) -> u64 {
        let q = self.field.q() as u64;
        self.entries.iter().rev().fold(0u64, |acc, e| acc * q + e.code() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = FieldSpec::gf(3).unwrap();
        let p = Matrix::from_ints(&f, [[1, 0, 1], [1, -1, -1], [0, 0, -1]]);
        let pi = p.inverse().unwrap();
        assert_eq!(p.mul(&pi), Matrix::identity(&f, 3));
        // this particular P is an involution over GF(3)
        assert_eq!(pi, p);
        assert_eq!(p.det(), f.from_int(1));
        let s = Matrix::from_ints(&f, [[1, 1], [1, 1]]);
        assert!(s.inverse().is_none());
        assert_eq!(s.det(), Elem::ZERO);
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn diag_rank_and_trace() {
        let f = FieldSpec::gf(3).unwrap();
        let d = Matrix::from_ints(&f, [[0, 0, 0], [0, 1, 0], [0, 0, 2]]);
        assert_eq!(d.rank(), 2);
        assert_eq!(d.trace(), Elem::ZERO);
        assert_eq!(Matrix::elementary(&f, 3, 0, 1).rank(), 1);
    }

    #[test]
    fn from_codes_validation() {
        let f = FieldSpec::gf(2).unwrap();
        assert!(matches!(
            Matrix::from_codes(&f, &[vec![0, 2], vec![0, 0]]),
            Err(Error::InvalidElement { code: 2, q: 2 })
        ));
        assert!(matches!(
            Matrix::from_codes(&f, &[vec![0, 1, 1], vec![0, 0]]),
            Err(Error::SizeMismatch { .. })
        ));
        let g = FieldSpec::gf(3).unwrap();
        let a = Matrix::identity(&f, 2);
        assert_eq!(a.check_compatible(&Matrix::identity(&g, 2)), Err(Error::FieldMismatch));
    }

    #[test]
    fn index_code_is_injective_on_small_space() {
        let f = FieldSpec::gf(2).unwrap();
        let mut seen = std::collections::HashSet::new();
        for c in 0..16u32 {
            let e = (0..4).map(|i| f.elem((c >> i) & 1).unwrap()).collect();
            let m = Matrix::from_entries(&f, 2, e).unwrap();
            assert_eq!(m.index_code(), c as u64);
            assert!(seen.insert(m.index_code()));
        }
    }
}
