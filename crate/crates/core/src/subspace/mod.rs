//! Linear subspaces of M_n(K), held in canonical reduced row echelon form.
//!
//! Matrices are vectorized row-major, so two subspaces are equal exactly when
//! their echelon bases are identical.

mod lines;
mod spectral;

pub use lines::{good_vectors, projective_points, restrict_to_line};
pub use spectral::{spectral_classify, Predicate, SpectralFlags};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::echelon::{dot, nullspace, Echelon};
use crate::linalg::Matrix;

/// Largest element count any enumeration will attempt.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixSubspace {
    field: FieldSpec,
    n: usize,
    ech: Echelon,
}

impl std::fmt::Debug for MatrixSubspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixSubspace")
            .field("field", &self.field)
            .field("n", &self.n)
            .field("basis", &self.basis())
            .finish()
    }
}

impl MatrixSubspace {
    pub fn zero(field: &FieldSpec, n: usize) -> MatrixSubspace {
        MatrixSubspace {
            field: field.clone(),
            n,
            ech: Echelon::empty(n * n),
        }
    }

    /// All of M_n(K).
    pub fn full(field: &FieldSpec, n: usize) -> MatrixSubspace {
        let gens: Vec<Matrix> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::elementary(field, n, i, j))
            .collect();
        MatrixSubspace::span_unchecked(field, n, &gens)
    }

    /// Canonical span of `generators`, which must share `field` and size `n`.
    pub fn span(field: &FieldSpec, n: usize, generators: &[Matrix]) -> Result<MatrixSubspace> {
        for g in generators {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: g.n(),
                });
            }
        }
        Ok(MatrixSubspace::span_unchecked(field, n, generators))
    }

    pub(crate) fn span_unchecked(field: &FieldSpec, n: usize, generators: &[Matrix]) -> MatrixSubspace {
        MatrixSubspace {
            field: field.clone(),
            n,
            ech: Echelon::from_rows(field, n * n, generators.iter().map(|g| g.entries().to_vec())),
        }
    }

    pub(crate) fn from_echelon(field: &FieldSpec, n: usize, ech: Echelon) -> MatrixSubspace {
        debug_assert_eq!(ech.ncols(), n * n);
        MatrixSubspace {
            field: field.clone(),
            n,
            ech,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    /// Canonical basis matrices.
    pub fn basis(&self) -> Vec<Matrix> {
        self.ech
            .rows()
            .iter()
            .map(|r| Matrix::from_entries(&self.field, self.n, r.clone()).expect("row has n² entries"))
            .collect()
    }

    fn check(&self, other: &MatrixSubspace) -> Result<()> {
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

    fn check_matrix(&self, m: &Matrix) -> Result<()> {
        if m.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if m.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: m.n(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.check_matrix(m)?;
        Ok(self.ech.contains(&self.field, m.entries()))
    }

    /// Coordinates of `m` against the canonical basis, if `m` ∈ V.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Elem>> {
        self.ech.coordinates(&self.field, m.entries())
    }

    pub fn is_subspace_of(&self, other: &MatrixSubspace) -> Result<bool> {
        self.check(other)?;
        Ok(self.ech.rows().iter().all(|r| other.ech.contains(&self.field, r)))
    }

    pub fn sum(&self, other: &MatrixSubspace) -> Result<MatrixSubspace> {
        self.check(other)?;
        let mut e = self.ech.clone();
        for r in other.ech.rows() {
            e.insert(&self.field, r.clone());
        }
        Ok(MatrixSubspace::from_echelon(&self.field, self.n, e))
    }

    /// V ∩ W: the combinations of V's basis killed by every functional vanishing on W.
    pub fn intersect(&self, other: &MatrixSubspace) -> Result<MatrixSubspace> {
        self.check(other)?;
        let f = &self.field;
        let ann = other.ech.annihilator(f);
        let rows = self.ech.rows();
        let eqs: Vec<Vec<Elem>> = ann
            .iter()
            .map(|a| rows.iter().map(|b| dot(f, a, b)).collect())
            .collect();
        let sols = nullspace(f, rows.len(), &eqs);
        Ok(MatrixSubspace::from_echelon(
            f,
            self.n,
            Echelon::from_rows(f, self.n * self.n, sols.iter().map(|x| self.combine_vec(x))),
        ))
    }

    /// P V P⁻¹.
    pub fn conjugate(&self, p: &Matrix) -> Result<MatrixSubspace> {
        self.check_matrix(p)?;
        let pi = p.inverse().ok_or(Error::SingularConjugator)?;
        Ok(self.conjugate_with(p, &pi))
    }

    /// P V P⁻¹ with the inverse supplied by the caller.
    pub fn conjugate_with(&self, p: &Matrix, p_inv: &Matrix) -> MatrixSubspace {
        let gens: Vec<Matrix> = self.basis().iter().map(|b| b.conjugate_by(p, p_inv)).collect();
        MatrixSubspace::span_unchecked(&self.field, self.n, &gens)
    }

    fn combine_vec(&self, coords: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut v = vec![Elem::ZERO; self.n * self.n];
        for (c, row) in coords.iter().zip(self.ech.rows()) {
            crate::linalg::echelon::axpy(f, &mut v, *c, row);
        }
        v
    }

    /// Σ coords_i · basis_i.
    pub fn combine(&self, coords: &[Elem]) -> Matrix {
        Matrix::from_entries(&self.field, self.n, self.combine_vec(coords)).expect("n² entries")
    }

    /// Number of elements, q^dim.
    pub fn cardinality(&self) -> u128 {
        (self.field.q() as u128).pow(self.dim() as u32)
    }

    pub(crate) fn guard(&self) -> Result<()> {
        let c = self.cardinality();
        if c > ENUMERATION_GUARD {
            return Err(Error::TooLarge(c));
        }
        Ok(())
    }

    /// Coordinate tuple number `idx`, little-endian base q.
    pub(crate) fn coords_of_index(&self, mut idx: u64) -> Vec<Elem> {
        let q = self.field.q() as u64;
        (0..self.dim())
            .map(|_| {
                let d = (idx % q) as u32;
                idx /= q;
                Elem::from_code_unchecked(d)
            })
            .collect()
    }

    /// Every element exactly once, in coordinate-index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Matrix> + '_> {
        self.guard()?;
        let total = self.cardinality() as u64;
        Ok((0..total).map(move |i| self.combine(&self.coords_of_index(i))))
    }

    /// One nonzero element per line through the origin: coordinates whose
    /// first nonzero entry is 1.
    pub fn projective_elements(&self) -> Result<impl Iterator<Item = Matrix> + '_> {
        self.guard()?;
        let d = self.dim();
        let q = self.field.q() as u64;
        Ok((0..d).flat_map(move |lead| {
            let tail = d - lead - 1;
            (0..q.pow(tail as u32)).map(move |mut t| {
                let mut c = vec![Elem::ZERO; d];
                c[lead] = Elem::ONE;
                for x in c.iter_mut().skip(lead + 1) {
                    *x = Elem::from_code_unchecked((t % q) as u32);
                    t /= q;
                }
                self.combine(&c)
            })
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::gf(q).unwrap()
    }

    fn nt(f: &FieldSpec, n: usize) -> MatrixSubspace {
        let g: Vec<Matrix> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::elementary(f, n, i, j))
            .collect();
        MatrixSubspace::span(f, n, &g).unwrap()
    }

    #[test]
    fn span_examples() {
        let f2 = gf(2);
        let e = Matrix::elementary(&f2, 2, 0, 1);
        assert_eq!(MatrixSubspace::span(&f2, 2, &[e.clone(), e]).unwrap().dim(), 1);
        let f3 = gf(3);
        let i = Matrix::identity(&f3, 2);
        assert_eq!(
            MatrixSubspace::span(&f3, 2, &[i.clone(), i.scale(f3.from_int(2))])
                .unwrap()
                .dim(),
            1
        );
        assert_eq!(
            MatrixSubspace::span(&f3, 3, &[Matrix::identity(&f3, 2)]),
            Err(Error::SizeMismatch { expected: 3, got: 2 })
        );
        assert_eq!(
            MatrixSubspace::span(&f3, 2, &[Matrix::identity(&f2, 2)]),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn lattice_ops() {
        let f = gf(3);
        let n3 = nt(&f, 3);
        let ut = n3
            .sum(&MatrixSubspace::span(&f, 3, &[Matrix::identity(&f, 3)]).unwrap())
            .unwrap();
        assert_eq!(n3.intersect(&ut).unwrap(), n3);
        assert!(n3.is_subspace_of(&ut).unwrap());
        assert!(ut.contains(&Matrix::identity(&f, 3)).unwrap());
        assert!(!n3.contains(&Matrix::identity(&f, 3)).unwrap());
    }

    #[test]
    fn modular_law_m2_gf2() {
        // every subspace of dim ≤ 2, spanned by pairs of matrices
        let f = gf(2);
        let all: Vec<Matrix> = MatrixSubspace::full(&f, 2).elements().unwrap().collect();
        let mut spaces = std::collections::HashSet::new();
        for a in &all {
            for b in &all {
                spaces.insert(MatrixSubspace::span(&f, 2, &[a.clone(), b.clone()]).unwrap());
            }
        }
        // 1 + 15 + 35 subspaces of dimension 0, 1, 2
        assert_eq!(spaces.len(), 51);
        for v in &spaces {
            for w in &spaces {
                let s = v.sum(w).unwrap().dim();
                let i = v.intersect(w).unwrap().dim();
                assert_eq!(s + i, v.dim() + w.dim());
            }
        }
    }

    #[test]
    fn conjugate_examples() {
        let f = gf(3);
        let n3 = nt(&f, 3);
        assert_eq!(n3.conjugate(&Matrix::identity(&f, 3)).unwrap(), n3);
        let rev = Matrix::from_ints(&f, [[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
        let lower = n3.conjugate(&rev).unwrap();
        assert_ne!(lower, n3);
        assert_eq!(lower, nt(&f, 3).conjugate(&rev).unwrap());
        assert!(lower.contains(&Matrix::elementary(&f, 3, 2, 0)).unwrap());
        let sing = Matrix::from_ints(&f, [[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(n3.conjugate(&sing), Err(Error::SingularConjugator));
    }

    #[test]
    fn conjugation_round_trip_gl2_gf3() {
        let f = gf(3);
        let v = MatrixSubspace::span(
            &f,
            2,
            &[
                Matrix::from_ints(&f, [[1, 2], [0, 1]]),
                Matrix::from_ints(&f, [[0, 0], [1, 0]]),
            ],
        )
        .unwrap();
        let mut count = 0;
        for p in MatrixSubspace::full(&f, 2).elements().unwrap() {
            let Some(pi) = p.inverse() else { continue };
            count += 1;
            assert_eq!(v.conjugate(&p).unwrap().conjugate(&pi).unwrap(), v);
        }
        assert_eq!(count, 48);
    }

    #[test]
    fn enumeration_counts() {
        let f = gf(3);
        let z = MatrixSubspace::zero(&f, 3);
        let els: Vec<_> = z.elements().unwrap().collect();
        assert_eq!(els, vec![Matrix::zero(&f, 3)]);
        let n3 = nt(&f, 3);
        let set: std::collections::HashSet<_> = n3.elements().unwrap().collect();
        assert_eq!(set.len(), 27);
        assert_eq!(n3.projective_elements().unwrap().count(), 13);
        assert!(matches!(
            MatrixSubspace::full(&gf(5), 4).elements(),
            Err(Error::TooLarge(_))
        ));
    }

    fn arb_matrices(q: u32, n: usize, k: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
        prop::collection::vec(prop::collection::vec(0..q, n * n), 0..=k)
    }

    proptest! {
        #[test]
        fn span_is_order_independent(gens in arb_matrices(3, 3, 6), seed in any::<u64>()) {
            let f = gf(3);
            let ms: Vec<Matrix> = gens
                .iter()
                .map(|g| Matrix::from_entries(&f, 3, g.iter().map(|&c| f.elem(c).unwrap()).collect()).unwrap())
                .collect();
            let mut shuffled = ms.clone();
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = MatrixSubspace::span(&f, 3, &ms).unwrap();
            let b = MatrixSubspace::span(&f, 3, &shuffled).unwrap();
            prop_assert_eq!(a.basis(), b.basis());
            for m in &ms {
                prop_assert!(a.contains(m).unwrap());
            }
        }

        #[test]
        fn intersection_is_contained_in_both(g1 in arb_matrices(2, 3, 4), g2 in arb_matrices(2, 3, 4)) {
            let f = gf(2);
            let mk = |g: &Vec<Vec<u32>>| {
                let ms: Vec<Matrix> = g
                    .iter()
                    .map(|e| Matrix::from_entries(&f, 3, e.iter().map(|&c| f.elem(c).unwrap()).collect()).unwrap())
                    .collect();
                MatrixSubspace::span(&f, 3, &ms).unwrap()
            };
            let (v, w) = (mk(&g1), mk(&g2));
            let i = v.intersect(&w).unwrap();
            prop_assert!(i.is_subspace_of(&v).unwrap());
            prop_assert!(i.is_subspace_of(&w).unwrap());
            prop_assert_eq!(i.dim() + v.sum(&w).unwrap().dim(), v.dim() + w.dim());
        }
    }
}
