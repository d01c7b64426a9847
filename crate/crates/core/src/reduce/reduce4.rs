//! n = 4 in characteristic 2: every 7-dimensional 1̄-spec space is similar to
//! exactly one of K·I₄+NT₄, 𝓗 and 𝓗₀.

use crate::catalog::{SpaceKind, SpaceLabel};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::subspace::{spectral_classify, MatrixSubspace};

use super::setup::{establish_conditions, unique_element};
use super::{certify, internal, ReductionTrace};

fn check_preconditions(v: &MatrixSubspace) -> Result<()> {
    let bad = |m: String| Err(Error::PreconditionViolated(m));
    if v.n() != 4 {
        return bad(format!("reduce4 needs 4×4 matrices, got n = {}", v.n()));
    }
    if v.field().characteristic() != 2 {
        return bad(format!(
            "reduce4 needs characteristic 2, got {}",
            v.field().characteristic()
        ));
    }
    if v.dim() != 7 {
        return bad(format!(
            "reduce4 needs a 7-dimensional space, got dimension {}",
            v.dim()
        ));
    }
    if !spectral_classify(v)?.onebar_spec {
        return bad("space is not 1̄-spec".to_string());
    }
    Ok(())
}

struct Families {
    /// φ(L) = L·A and ψ(C) = A·C, with A = [[λ, κ], [α, λ]].
    lambda: Elem,
    kappa: Elem,
    alpha: Elem,
}

/// Reads A_L, B_C and E off V, checking f = g = 0, that φ and ψ share A, and
/// the relations forced by c₃ ≡ 0: a₂₁ = α and a₁₁ = a₂₂. The entry a₁₂ is
/// left free by c₂ and c₃, so it is returned as κ.
fn read_families(w: &MatrixSubspace, tr: &mut ReductionTrace) -> Result<Families> {
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let unit = |i: usize| if i == 0 { [o, z] } else { [z, o] };
    let mut rows = [[z; 2]; 2];
    let mut cols = [[z; 2]; 2];
    for i in 0..2 {
        let [l1, l2] = unit(i);
        let al = unique_element(
            w,
            &[
                (0, 0, z),
                (0, 1, l1),
                (0, 2, l2),
                (0, 3, z),
                (1, 2, z),
                (1, 3, z),
                (2, 3, z),
            ],
        )?;
        let bc = unique_element(
            w,
            &[
                (0, 0, z),
                (0, 1, z),
                (0, 2, z),
                (0, 3, z),
                (1, 2, z),
                (1, 3, l1),
                (2, 3, l2),
            ],
        )?;
        let middle_zero = |m: &Matrix| (1..3).all(|r| (0..4).all(|c| m.get(r, c).is_zero()));
        if !middle_zero(&al) || !al.get(3, 3).is_zero() {
            return Err(internal("A_L does not have the expected shape"));
        }
        if (1..3).any(|r| (1..3).any(|c| !bc.get(r, c).is_zero())) || (1..4).any(|c| !bc.get(3, c).is_zero()) {
            return Err(internal("B_C does not have the expected shape"));
        }
        if !al.get(3, 0).is_zero() || !bc.get(3, 0).is_zero() {
            return Err(internal("f or g does not vanish"));
        }
        rows[i] = [al.get(3, 1), al.get(3, 2)];
        cols[i] = [bc.get(1, 0), bc.get(2, 0)];
        tr.family(&format!("A_L{}", i + 1), &al);
        tr.family(&format!("B_C{}", i + 1), &bc);
    }
    let a = rows;
    if (0..2).any(|i| (0..2).any(|j| a[i][j] != cols[j][i])) {
        return Err(internal("φ and ψ are not given by the same matrix"));
    }
    let e = unique_element(
        w,
        &[
            (0, 0, z),
            (0, 1, z),
            (0, 2, z),
            (0, 3, z),
            (1, 2, o),
            (1, 3, z),
            (2, 3, z),
        ],
    )?;
    let alpha = e.get(3, 0);
    let mut expected = Matrix::elementary(w.field(), 4, 1, 2);
    expected.set(3, 0, alpha);
    if e != expected {
        return Err(internal("E does not have the expected shape"));
    }
    tr.family("E", &e);
    if a[1][0] != alpha || a[0][0] != a[1][1] {
        return Err(internal("A is not of the form [[λ, κ], [α, λ]]"));
    }
    Ok(Families {
        lambda: a[0][0],
        kappa: a[0][1],
        alpha,
    })
}

/// Reduces a 7-dimensional 1̄-spec subspace of M₄(K), char K = 2, to
/// K·I₄+NT₄, 𝓗 or 𝓗₀.
///
/// After the common setup, V is spanned by I₄, E, J and the families A_L,
/// B_C with A = [[λ, κ], [α, λ]]. Clearing λ leaves a space V(α, κ):
/// V(0, 0) = K·I₄+NT₄, V(α, κ) ∼ 𝓗 whenever α ≠ 0, and V(0, κ) ∼ 𝓗₀ for κ ≠ 0.
pub fn reduce4(v: &MatrixSubspace) -> Result<(SpaceLabel, ReductionTrace)> {
    check_preconditions(v)?;
    let f = v.field().clone();
    let mut tr = ReductionTrace::new(v);
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let mut w = establish_conditions(v, &mut tr)?;

    let mut fam = read_families(&w, &mut tr)?;
    tr.param("alpha", fam.alpha);
    tr.param("kappa", fam.kappa);
    if !fam.alpha.is_zero() && fam.kappa.is_zero() {
        // diag(1, U, 1) with U = [[1,1],[0,1]] keeps the setup and sends κ to κ + α
        let mut u = Matrix::identity(&f, 4);
        u.set(1, 2, o);
        w = tr.apply(&w, "shear the middle block so that κ ≠ 0", u);
        fam = read_families(&w, &mut tr)?;
        if fam.kappa.is_zero() {
            return Err(internal("κ is still zero after the shear"));
        }
    }

    tr.param("lambda", fam.lambda);
    let mut pp = Matrix::identity(&f, 4);
    pp.set(3, 0, fam.lambda);
    w = tr.apply(&w, "clear λ with (P')⁻¹", pp.inverse().expect("unipotent"));
    let fam = read_families(&w, &mut tr)?;
    if !fam.lambda.is_zero() {
        return Err(internal("λ was not cleared"));
    }
    let (alpha, kappa) = (fam.alpha, fam.kappa);

    let j = unique_element(
        &w,
        &[
            (0, 0, z),
            (0, 1, z),
            (0, 2, z),
            (0, 3, o),
            (1, 2, z),
            (1, 3, z),
            (2, 3, z),
        ],
    )?;
    tr.family("J", &j);
    let b = j.get(1, 1);
    tr.param("b", b);
    let mut expected = Matrix::zero(&f, 4);
    expected.set(0, 3, o);
    expected.set(1, 1, b);
    expected.set(2, 2, b);
    expected.set(2, 1, alpha);
    expected.set(3, 0, f.mul(b, b));
    if j != expected {
        return Err(internal("J does not have the expected shape"));
    }
    if !b.is_zero() {
        return Err(internal("b ≠ 0"));
    }

    // D·V(α, κ)·D⁻¹ with D = diag(1, d₁, d₂, d₃) scales α by d₂d₃/d₁ and κ by d₁d₃/d₂
    let sqrt = |x: Elem| f.pow(x, u64::from(f.q() / 2));
    let kind = match (alpha.is_zero(), kappa.is_zero()) {
        (true, true) => SpaceKind::UT1,
        (false, false) => {
            let d3 = sqrt(f.inv(f.mul(alpha, kappa)).expect("ακ ≠ 0"));
            let d = Matrix::diag(&f, &[o, f.mul(alpha, d3), o, d3]);
            tr.apply(&w, "rescale so that α = κ = 1", d);
            SpaceKind::H
        }
        (true, false) => {
            let d = Matrix::diag(&f, &[o, f.inv(kappa).expect("κ ≠ 0"), o, o]);
            tr.apply(&w, "rescale so that κ = 1", d);
            SpaceKind::H0
        }
        (false, true) => return Err(internal("κ = 0 with α ≠ 0 after the shear")),
    };
    certify(v, SpaceLabel::new(kind, &f, 4, None), tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_named;
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_gl(f: &FieldSpec, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let e = (0..16).map(|_| f.elem(rng.gen_range(0..f.q())).unwrap()).collect();
            let m = Matrix::from_entries(f, 4, e).unwrap();
            if m.inverse().is_some() {
                return m;
            }
        }
    }

    #[test]
    fn named_spaces() {
        for q in [2, 4] {
            let f = FieldSpec::gf(q).unwrap();
            let (l, tr) = reduce4(&make_named(SpaceKind::UT1, &f, 4, None).unwrap()).unwrap();
            assert_eq!(l.kind, SpaceKind::UT1);
            assert_eq!(tr.accumulated, Matrix::identity(&f, 4));
            let (l, _) = reduce4(&make_named(SpaceKind::H, &f, 4, None).unwrap()).unwrap();
            assert_eq!(l.kind, SpaceKind::H);
            let (l, _) = reduce4(&make_named(SpaceKind::H0, &f, 4, None).unwrap()).unwrap();
            assert_eq!(l.kind, SpaceKind::H0);
        }
    }

    #[test]
    fn alpha_family_over_gf4() {
        let f = FieldSpec::gf(4).unwrap();
        let h = make_named(SpaceKind::H, &f, 4, None).unwrap();
        for alpha in f.nonzero_elements() {
            let d = Matrix::diag(&f, &[Elem::ONE, Elem::ONE, Elem::ONE, alpha]);
            let (l, tr) = reduce4(&h.conjugate(&d).unwrap()).unwrap();
            assert_eq!(l.kind, SpaceKind::H);
            assert_eq!(tr.params["alpha"], alpha);
        }
    }

    /// V(α, κ) from the normal form, built directly.
    fn v_alpha_kappa(f: &FieldSpec, alpha: Elem, kappa: Elem) -> MatrixSubspace {
        let pair = |a: (usize, usize), c: Elem, b: (usize, usize)| {
            let mut m = Matrix::elementary(f, 4, a.0, a.1);
            m.set(b.0, b.1, c);
            m
        };
        let gens = [
            Matrix::identity(f, 4),
            pair((0, 1), kappa, (3, 2)),
            pair((0, 2), alpha, (3, 1)),
            pair((1, 3), alpha, (2, 0)),
            pair((2, 3), kappa, (1, 0)),
            pair((1, 2), alpha, (3, 0)),
            pair((0, 3), alpha, (2, 1)),
        ];
        MatrixSubspace::span(f, 4, &gens).unwrap()
    }

    #[test]
    fn normal_form_family() {
        let f = FieldSpec::gf(4).unwrap();
        for alpha in f.elements() {
            for kappa in f.elements() {
                let v = v_alpha_kappa(&f, alpha, kappa);
                let want = match (alpha.is_zero(), kappa.is_zero()) {
                    (true, true) => SpaceKind::UT1,
                    (true, false) => SpaceKind::H0,
                    _ => SpaceKind::H,
                };
                assert_eq!(reduce4(&v).unwrap().0.kind, want);
            }
        }
        assert_eq!(
            v_alpha_kappa(&f, Elem::ONE, Elem::ONE),
            make_named(SpaceKind::H, &f, 4, None).unwrap()
        );
        assert_eq!(
            v_alpha_kappa(&f, Elem::ZERO, Elem::ONE),
            make_named(SpaceKind::H0, &f, 4, None).unwrap()
        );
    }

    #[test]
    fn random_conjugates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for q in [2, 4] {
            let f = FieldSpec::gf(q).unwrap();
            for kind in [SpaceKind::UT1, SpaceKind::H, SpaceKind::H0] {
                let v = make_named(kind, &f, 4, None).unwrap();
                for _ in 0..6 {
                    let w = v.conjugate(&random_gl(&f, &mut rng)).unwrap();
                    let (l, tr) = reduce4(&w).unwrap();
                    assert_eq!(l.kind, kind);
                    assert_eq!(tr.product(), tr.accumulated);
                    assert_eq!(w.conjugate(&tr.accumulated).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn preconditions() {
        let f = FieldSpec::gf(2).unwrap();
        let nt = make_named(SpaceKind::NT, &f, 4, None).unwrap();
        assert!(matches!(reduce4(&nt), Err(Error::PreconditionViolated(_))));
        let f3 = FieldSpec::gf(3).unwrap();
        assert!(matches!(
            reduce4(&make_named(SpaceKind::UT1, &f3, 4, None).unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
        // swap one strictly upper generator for a lower one
        let mut gens = make_named(SpaceKind::NT, &f, 4, None).unwrap().basis();
        gens.pop();
        gens.push(Matrix::elementary(&f, 4, 3, 0));
        gens.push(Matrix::identity(&f, 4));
        let v = MatrixSubspace::span(&f, 4, &gens).unwrap();
        assert_eq!(v.dim(), 7);
        assert!(matches!(reduce4(&v), Err(Error::PreconditionViolated(_))));
    }
}
