//! Gaussian elimination on row vectors over a [`FieldSpec`].
//!
//! Pivots are always the first nonzero column, so every result here is
//! deterministic and reduced row echelon forms are canonical.

use crate::field::{Elem, FieldSpec};

/// A reduced row echelon basis with normalized (unit) pivots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

pub(crate) fn axpy(f: &FieldSpec, y: &mut [Elem], a: Elem, x: &[Elem]) {
    if a.is_zero() {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = f.add(*yi, f.mul(a, xi));
    }
}

pub(crate) fn scale(f: &FieldSpec, a: Elem, x: &mut [Elem]) {
    for xi in x.iter_mut() {
        *xi = f.mul(a, *xi);
    }
}

pub(crate) fn dot(f: &FieldSpec, x: &[Elem], y: &[Elem]) -> Elem {
    x.iter()
        .zip(y)
        .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

impl Echelon {
    pub fn empty(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Row-reduces `rows` (each of length `ncols`), dropping dependent rows.
    pub fn from_rows(f: &FieldSpec, ncols: usize, rows: impl IntoIterator<Item = Vec<Elem>>) -> Echelon {
        let mut e = Echelon::empty(ncols);
        for r in rows {
            e.insert(f, r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts from `v` its components along the basis rows.
    pub fn reduce(&self, f: &FieldSpec, v: &mut [Elem]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                axpy(f, v, f.neg(c), row);
            }
        }
    }

    pub fn contains(&self, f: &FieldSpec, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` against the basis rows, if `v` lies in the span.
    pub fn coordinates(&self, f: &FieldSpec, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// Adds `v` to the span. Returns false when `v` was already in it.
    pub fn insert(&mut self, f: &FieldSpec, mut v: Vec<Elem>) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]).expect("pivot is nonzero");
        scale(f, inv, &mut v);
        for row in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                axpy(f, row, f.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&x| x < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Basis of the annihilator: all functionals vanishing on the span,
    /// written as vectors `a` with `dot(a, v) = 0`.
    pub fn annihilator(&self, f: &FieldSpec) -> Vec<Vec<Elem>> {
        nullspace(f, self.ncols, &self.rows)
    }
}

/// Basis of `{x : a_i . x = 0 for every row a_i}`, one vector per free column,
/// in increasing free-column order.
pub fn nullspace(f: &FieldSpec, ncols: usize, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let e = Echelon::from_rows(f, ncols, rows.iter().cloned());
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![Elem::ZERO; ncols];
            x[fc] = Elem::ONE;
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                x[p] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// Solves `a_i . x = b_i` for all i. Returns a particular solution and a
/// basis of the homogeneous solutions, or `None` if inconsistent.
pub fn solve_affine(
    f: &FieldSpec,
    ncols: usize,
    rows: &[Vec<Elem>],
    rhs: &[Elem],
) -> Option<(Vec<Elem>, Vec<Vec<Elem>>)> {
    let augmented = rows.iter().zip(rhs).map(|(r, &b)| {
        let mut v = r.clone();
        v.push(b);
        v
    });
    let e = Echelon::from_rows(f, ncols + 1, augmented);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Elem::ZERO; ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[ncols];
    }
    Some((x, nullspace(f, ncols, rows)))
}
