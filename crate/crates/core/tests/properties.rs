use proptest::prelude::*;

use onespec_core::catalog::{class_representatives, make_named, rank1_span_dim, singular_set_is_subspace, SpaceKind};
use onespec_core::linalg::{b2, char_poly, ck_coefficients};
use onespec_core::reduce::reduce;
use onespec_core::subspace::spectral_classify;
use onespec_core::{Elem, FieldSpec, Matrix};

const FIELDS: [u32; 6] = [2, 3, 4, 5, 8, 9];

fn matrix(q: u32, n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..q, n * n).prop_map(move |codes| {
        let f = FieldSpec::gf(q).unwrap();
        let e: Vec<Elem> = codes.iter().map(|&c| f.elem(c).unwrap()).collect();
        Matrix::from_entries(&f, n, e).unwrap()
    })
}

fn invertible(q: u32, n: usize) -> impl Strategy<Value = Matrix> {
    matrix(q, n).prop_filter("singular", |m| m.inverse().is_some())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn char_poly_is_similarity_invariant((m, p) in (0..FIELDS.len(), 1..5usize)
        .prop_flat_map(|(i, n)| (matrix(FIELDS[i], n), invertible(FIELDS[i], n))))
    {
        let pi = p.inverse().unwrap();
        prop_assert_eq!(char_poly(&m), char_poly(&m.conjugate_by(&p, &pi)));
    }

    #[test]
    fn b2_polarizes_c2((a, b) in (0..FIELDS.len(), 2..5usize)
        .prop_flat_map(|(i, n)| (matrix(FIELDS[i], n), matrix(FIELDS[i], n))))
    {
        let f = a.field().clone();
        let c2 = |m: &Matrix| ck_coefficients(m)[1];
        let lhs = f.sub(f.sub(c2(&a.add(&b)), c2(&a)), c2(&b));
        prop_assert_eq!(lhs, b2(&a, &b).unwrap());
        prop_assert_eq!(b2(&a, &b).unwrap(), b2(&b, &a).unwrap());
    }

    #[test]
    fn cayley_hamilton(m in (0..FIELDS.len(), 1..5usize).prop_flat_map(|(i, n)| matrix(FIELDS[i], n))) {
        let p = char_poly(&m);
        let f = m.field();
        let value = p.coeffs().iter().enumerate().fold(Matrix::zero(f, m.n()), |acc, (k, &c)| {
            acc.add(&m.pow(k as u32).scale(c))
        });
        prop_assert!(value.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reductions_survive_conjugation(rep in 0..5usize, p in invertible(3, 3)) {
        let f = FieldSpec::gf(3).unwrap();
        let label = class_representatives(&f).unwrap()[rep].clone();
        let w = label.space().unwrap().conjugate(&p).unwrap();
        let (got, trace) = reduce(&w).unwrap();
        prop_assert_eq!(&got, &label);
        prop_assert_eq!(w.conjugate(&trace.accumulated).unwrap(), label.space().unwrap());
    }

    #[test]
    fn n4_reductions_survive_conjugation(kind in prop::sample::select(vec![SpaceKind::UT1, SpaceKind::H, SpaceKind::H0]),
                                         q in prop::sample::select(vec![2u32, 4]),
                                         codes in prop::collection::vec(0..4u32, 16)) {
        let f = FieldSpec::gf(q).unwrap();
        let e: Vec<Elem> = codes.iter().map(|&c| f.elem(c % q).unwrap()).collect();
        let p = Matrix::from_entries(&f, 4, e).unwrap();
        prop_assume!(p.inverse().is_some());
        let v = make_named(kind, &f, 4, None).unwrap();
        let w = v.conjugate(&p).unwrap();
        let (got, trace) = reduce(&w).unwrap();
        prop_assert_eq!(got.kind, kind);
        prop_assert_eq!(w.conjugate(&trace.accumulated).unwrap(), v);
    }

    #[test]
    fn invariants_survive_conjugation(rep in 0..5usize, p in invertible(3, 3)) {
        let f = FieldSpec::gf(3).unwrap();
        let v = class_representatives(&f).unwrap()[rep].space().unwrap();
        let w = v.conjugate(&p).unwrap();
        prop_assert_eq!(rank1_span_dim(&v).unwrap(), rank1_span_dim(&w).unwrap());
        prop_assert_eq!(
            singular_set_is_subspace(&v).unwrap().is_subspace,
            singular_set_is_subspace(&w).unwrap().is_subspace
        );
        prop_assert_eq!(spectral_classify(&v).unwrap(), spectral_classify(&w).unwrap());
    }
}
