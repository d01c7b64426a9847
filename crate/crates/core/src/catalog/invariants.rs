//! Similarity invariants used to tell model spaces apart.

use crate::error::{Error, Result};
use crate::linalg::echelon::Echelon;
use crate::linalg::Matrix;
use crate::subspace::MatrixSubspace;

/// Dimension of the span of the rank-one elements of V.
pub fn rank1_span_dim(v: &MatrixSubspace) -> Result<usize> {
    let f = v.field();
    let mut e = Echelon::empty(v.n() * v.n());
    for m in v.projective_elements()? {
        if m.rank() == 1 {
            e.insert(f, m.into_entries());
        }
    }
    Ok(e.rank())
}

/// Whether the singular elements of V form a linear subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSet {
    pub is_subspace: bool,
    /// On failure, the first pair (in enumeration order) of singular
    /// elements whose sum is invertible.
    pub witness: Option<(Matrix, Matrix)>,
}

/// The singular set is closed under scaling, so it is a subspace exactly when
/// it is closed under addition.
pub fn singular_set_is_subspace(v: &MatrixSubspace) -> Result<SingularSet> {
    let singular: Vec<Matrix> = v.elements()?.filter(|m| m.rank() < m.n()).collect();
    for (i, a) in singular.iter().enumerate() {
        for b in &singular[i + 1..] {
            if a.add(b).rank() == a.n() {
                return Ok(SingularSet {
                    is_subspace: false,
                    witness: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    Ok(SingularSet {
        is_subspace: true,
        witness: None,
    })
}

/// Every basis element is trace-free and pairwise orthogonal for (A, B) ↦ tr(AB).
/// Only meaningful for n = 3 in characteristic 3.
pub fn isotropy_check(v: &MatrixSubspace) -> Result<bool> {
    if v.field().characteristic() != 3 {
        return Err(Error::WrongCharacteristic {
            expected: 3,
            got: v.field().characteristic(),
        });
    }
    if v.n() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            got: v.n(),
        });
    }
    let basis = v.basis();
    for (i, a) in basis.iter().enumerate() {
        if !a.trace().is_zero() {
            return Ok(false);
        }
        for b in &basis[i..] {
            if !a.mul(b).trace().is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_named, SpaceKind};
    use crate::field::{Elem, FieldSpec};
    use crate::subspace::spectral_classify;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::gf(q).unwrap()
    }

    #[test]
    fn rank_one_spans() {
        let f = gf(3);
        let g0 = make_named(SpaceKind::G, &f, 3, Some(Elem::ZERO)).unwrap();
        assert_eq!(rank1_span_dim(&g0).unwrap(), 1);
        let ci = make_named(SpaceKind::CalI, &f, 3, None).unwrap();
        assert_eq!(rank1_span_dim(&ci).unwrap(), 3);
        let nt2 = make_named(SpaceKind::NT, &gf(2), 2, None).unwrap();
        assert_eq!(rank1_span_dim(&nt2).unwrap(), 1);
    }

    #[test]
    fn singular_sets() {
        let f2 = gf(2);
        let ut = make_named(SpaceKind::UT1, &f2, 4, None).unwrap();
        assert!(singular_set_is_subspace(&ut).unwrap().is_subspace);
        let h = make_named(SpaceKind::H, &f2, 4, None).unwrap();
        let r = singular_set_is_subspace(&h).unwrap();
        assert!(!r.is_subspace);
        let (a, b) = r.witness.unwrap();
        assert!(a.rank() < 4 && b.rank() < 4 && a.add(&b).rank() == 4);
        // the pair displayed in the non-similarity argument for 𝓗 also works
        let a = Matrix::from_ints(&f2, [[0, 0, 0, 1], [0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0]]);
        let b = Matrix::from_ints(&f2, [[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [1, 0, 0, 0]]);
        assert!(h.contains(&a).unwrap() && h.contains(&b).unwrap());
        assert!(a.rank() < 4 && b.rank() < 4 && a.add(&b).rank() == 4);
    }

    #[test]
    fn f_delta_singular_pair() {
        let f = gf(3);
        for d in f.elements() {
            let v = make_named(SpaceKind::F, &f, 3, Some(d)).unwrap();
            assert!(!singular_set_is_subspace(&v).unwrap().is_subspace);
            let a = Matrix::from_ints(&f, [[0, 1, 0], [0, 0, 0], [1, 0, 0]]);
            let mut b = Matrix::zero(&f, 3);
            b.set(1, 2, Elem::ONE);
            b.set(2, 0, d);
            let t = f.nonzero_elements().find(|&t| t != f.neg(d)).unwrap();
            assert!(a.rank() < 3 && b.rank() < 3);
            assert_eq!(a.scale(t).add(&b).rank(), 3);
        }
    }

    #[test]
    fn isotropy_examples() {
        let f = gf(3);
        assert!(isotropy_check(&make_named(SpaceKind::UT1, &f, 3, None).unwrap()).unwrap());
        for d in f.elements() {
            assert!(isotropy_check(&make_named(SpaceKind::G, &f, 3, Some(d)).unwrap()).unwrap());
        }
        let s = Matrix::from_ints(&f, [[0, 1, 0], [1, 0, 0], [0, 0, 0]]);
        assert!(!isotropy_check(&MatrixSubspace::span(&f, 3, &[s]).unwrap()).unwrap());
        assert!(isotropy_check(&make_named(SpaceKind::UT1, &gf(2), 3, None).unwrap()).is_err());
        assert!(isotropy_check(&make_named(SpaceKind::UT1, &f, 4, None).unwrap()).is_err());
    }

    #[test]
    fn isotropy_matches_onebar_on_random_subspaces() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sl3 = make_named(SpaceKind::SL, &f, 3, None).unwrap();
        for _ in 0..200 {
            let k = rng.gen_range(1..=4);
            let gens: Vec<Matrix> = (0..k)
                .map(|_| {
                    let c: Vec<Elem> = (0..sl3.dim()).map(|_| f.elem(rng.gen_range(0..3)).unwrap()).collect();
                    sl3.combine(&c)
                })
                .collect();
            let v = MatrixSubspace::span(&f, 3, &gens).unwrap();
            assert_eq!(isotropy_check(&v).unwrap(), spectral_classify(&v).unwrap().onebar_spec);
        }
    }

    #[test]
    fn invariants_survive_conjugation() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let spaces = [
            make_named(SpaceKind::G, &f, 3, Some(Elem::ZERO)).unwrap(),
            make_named(SpaceKind::F, &f, 3, Some(Elem::ONE)).unwrap(),
            make_named(SpaceKind::UT1, &f, 3, None).unwrap(),
        ];
        for v in &spaces {
            for _ in 0..5 {
                let p = loop {
                    let e = (0..9).map(|_| f.elem(rng.gen_range(0..3)).unwrap()).collect();
                    let p = Matrix::from_entries(&f, 3, e).unwrap();
                    if p.inverse().is_some() {
                        break p;
                    }
                };
                let w = v.conjugate(&p).unwrap();
                assert_eq!(rank1_span_dim(&w).unwrap(), rank1_span_dim(v).unwrap());
                assert_eq!(
                    singular_set_is_subspace(&w).unwrap().is_subspace,
                    singular_set_is_subspace(v).unwrap().is_subspace
                );
            }
        }
    }
}
