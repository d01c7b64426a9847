//! n = 3 in characteristic 3: every 4-dimensional 1̄-spec space is similar to
//! exactly one of K·I₃+NT₃, some 𝓕_δ or some 𝓖_δ.

use crate::catalog::{f_representative, g_representative, isotropy_check, make_named, SpaceKind, SpaceLabel};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::Matrix;
use crate::subspace::MatrixSubspace;

use super::setup::{establish_conditions, unique_element};
use super::{certify, internal, ReductionTrace};

struct Params {
    a: Elem,
    b: Elem,
    t: Elem,
}

fn check_preconditions(v: &MatrixSubspace) -> Result<()> {
    let bad = |m: String| Err(Error::PreconditionViolated(m));
    if v.n() != 3 {
        return bad(format!("reduce3 needs 3×3 matrices, got n = {}", v.n()));
    }
    if v.field().characteristic() != 3 {
        return bad(format!(
            "reduce3 needs characteristic 3, got {}",
            v.field().characteristic()
        ));
    }
    if v.dim() != 4 {
        return bad(format!(
            "reduce3 needs a 4-dimensional space, got dimension {}",
            v.dim()
        ));
    }
    // for n = 3 in characteristic 3, 1̄-spec is total isotropy inside sl₃
    if !isotropy_check(v)? {
        return bad("space is not 1̄-spec".to_string());
    }
    Ok(())
}

/// A₁ = [[0,1,0],[0,0,0],[a,λ,0]] and B₁ = [[0,0,0],[μ,0,1],[b,0,0]].
fn read_a1_b1(w: &MatrixSubspace) -> Result<(Matrix, Matrix)> {
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let a1 = unique_element(
        w,
        &[
            (0, 0, z),
            (0, 1, o),
            (0, 2, z),
            (1, 0, z),
            (1, 1, z),
            (1, 2, z),
            (2, 2, z),
        ],
    )?;
    let b1 = unique_element(
        w,
        &[
            (0, 0, z),
            (0, 1, z),
            (0, 2, z),
            (1, 1, z),
            (1, 2, o),
            (2, 1, z),
            (2, 2, z),
        ],
    )?;
    Ok((a1, b1))
}

/// Reads (a, b, t) once λ = μ = 0, checking J′ = [[t,0,1],[−a,0,0],[−t²,−b,−t]].
fn read_params(w: &MatrixSubspace, tr: &mut ReductionTrace) -> Result<Params> {
    let f = w.field().clone();
    let (a1, b1) = read_a1_b1(w)?;
    if !a1.get(2, 1).is_zero() || !b1.get(1, 0).is_zero() {
        return Err(internal("λ and μ were not cleared"));
    }
    let (a, b) = (a1.get(2, 0), b1.get(2, 0));
    let (z, o) = (Elem::ZERO, Elem::ONE);
    let j = unique_element(w, &[(0, 0, z), (0, 1, z), (0, 2, o), (1, 2, z)])?;
    let jp = j.sub(&Matrix::scalar(&f, 3, j.get(1, 1)));
    let t = jp.get(0, 0);
    let expected = Matrix::from_entries(
        &f,
        3,
        vec![t, z, o, f.neg(a), z, z, f.neg(f.mul(t, t)), f.neg(b), f.neg(t)],
    )?;
    if jp != expected {
        return Err(internal("J′ does not have the expected shape"));
    }
    tr.family("A1", &a1);
    tr.family("B1", &b1);
    tr.family("J'", &jp);
    Ok(Params { a, b, t })
}

fn e(f: &FieldSpec, i: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; 3];
    v[i] = Elem::ONE;
    let _ = f;
    v
}

/// a ≠ 0: rescale the basis to (e₁/γ, a·e₂/γ², e₃), with γ = t when t ≠ 0.
fn rescale(w: &MatrixSubspace, tr: &mut ReductionTrace, p: &Params) -> Result<(SpaceKind, Elem, MatrixSubspace)> {
    let f = w.field().clone();
    let gamma = if p.t.is_zero() { Elem::ONE } else { p.t };
    let g2 = f.mul(gamma, gamma);
    let d = Matrix::diag(&f, &[gamma, f.div(g2, p.a)?, Elem::ONE]);
    let w = tr.apply(w, "rescale basis to (e1/γ, a·e2/γ², e3)", d);
    let delta = f.div(f.mul(p.a, p.b), f.mul(g2, gamma))?;
    let kind = if p.t.is_zero() { SpaceKind::G } else { SpaceKind::F };
    Ok((kind, delta, w))
}

fn shear(f: &FieldSpec, s: Elem, u: Elem) -> Matrix {
    Matrix::from_entries(
        f,
        3,
        vec![
            Elem::ONE,
            s,
            Elem::ZERO,
            Elem::ZERO,
            Elem::ONE,
            Elem::ZERO,
            s,
            u,
            Elem::ONE,
        ],
    )
    .expect("3×3")
}

/// Moves 𝓕_δ to 𝓕_rep with P_s = [[1,s,0],[0,1,0],[s,s−s²,1]]: P_s⁻¹ 𝓕_δ P_s = 𝓕_{δ+s³−s}.
fn canonical_f(w: &MatrixSubspace, tr: &mut ReductionTrace, delta: Elem) -> Result<(Elem, MatrixSubspace)> {
    let f = w.field().clone();
    let rep = f_representative(&f, delta)?;
    let s = f
        .elements()
        .find(|&s| f.add(delta, f.j(s)) == rep)
        .ok_or_else(|| internal("coset representative not reachable"))?;
    let u = f.sub(s, f.mul(s, s));
    let p = shear(&f, s, u).inverse().expect("unipotent");
    Ok((rep, tr.apply(w, "shift δ within its j(K) coset", p)))
}

/// Moves 𝓖_δ to 𝓖_rep: diag(γ, γ², 1) with γ = 1/c gives 𝓖_{c³δ}, then
/// P_s with u = −s² gives 𝓖_{c³δ+s³}.
fn canonical_g(w: &MatrixSubspace, tr: &mut ReductionTrace, delta: Elem) -> Result<(Elem, MatrixSubspace)> {
    let f = w.field().clone();
    let rep = g_representative(&f, delta)?;
    let cube = |x: Elem| f.pow(x, 3);
    let (c, s) = f
        .nonzero_elements()
        .flat_map(|c| f.elements().map(move |s| (c, s)))
        .find(|&(c, s)| f.add(f.mul(cube(c), delta), cube(s)) == rep)
        .ok_or_else(|| internal("≃₃ representative not reachable"))?;
    let gamma = f.inv(c).expect("nonzero");
    let w = tr.apply(
        w,
        "scale δ by a cube",
        Matrix::diag(&f, &[gamma, f.mul(gamma, gamma), Elem::ONE]),
    );
    let u = f.neg(f.mul(s, s));
    let p = shear(&f, s, u).inverse().expect("unipotent");
    Ok((rep, tr.apply(&w, "shift δ by a cube", p)))
}

/// Reduces a 4-dimensional 1̄-spec subspace of M₃(K), char K = 3, to its model space.
pub fn reduce3(v: &MatrixSubspace) -> Result<(SpaceLabel, ReductionTrace)> {
    check_preconditions(v)?;
    let f = v.field().clone();
    let mut tr = ReductionTrace::new(v);
    let w = establish_conditions(v, &mut tr)?;

    // μ = −λ, then clear λ with P′ = [[1,0,0],[0,1,0],[λ,0,1]]
    let (a1, b1) = read_a1_b1(&w)?;
    let (lambda, mu) = (a1.get(2, 1), b1.get(1, 0));
    tr.param("lambda", lambda);
    tr.param("mu", mu);
    if mu != f.neg(lambda) {
        return Err(internal("μ ≠ −λ"));
    }
    let pp = shear(&f, Elem::ZERO, Elem::ZERO).add(&{
        let mut m = Matrix::zero(&f, 3);
        m.set(2, 0, lambda);
        m
    });
    let w = tr.apply(&w, "clear λ with (P')⁻¹", pp.inverse().expect("unipotent"));

    let p = read_params(&w, &mut tr)?;
    tr.param("a", p.a);
    tr.param("b", p.b);
    tr.param("t", p.t);

    let (kind, delta, w) = if !p.a.is_zero() {
        let (k, d, w) = rescale(&w, &mut tr, &p)?;
        (k, Some(d), w)
    } else if !p.b.is_zero() {
        let q = Matrix::from_columns(&f, &[e(&f, 2), e(&f, 0), e(&f, 1)]);
        let w = tr.apply(&w, "reorder basis to (e3, e1, e2)", q.inverse().expect("permutation"));
        let p2 = read_params(&w, &mut tr)?;
        let expect_a = f.inv(p.b).expect("b ≠ 0");
        if p2.a != expect_a || !p2.b.is_zero() || p2.t != f.neg(f.mul(p.t, expect_a)) {
            return Err(internal("unexpected parameters after reordering"));
        }
        let (k, d, w) = rescale(&w, &mut tr, &p2)?;
        (k, Some(d), w)
    } else if !p.t.is_zero() {
        let mut c3 = e(&f, 2);
        c3[0] = f.neg(f.inv(p.t).expect("t ≠ 0"));
        let q = Matrix::from_columns(&f, &[e(&f, 0), e(&f, 1), c3]);
        let w = tr.apply(
            &w,
            "change basis to (e1, e2, e3 − e1/t)",
            q.inverse().expect("unipotent"),
        );
        if w != make_named(SpaceKind::CalI, &f, 3, None)? {
            return Err(internal("expected the space 𝓘"));
        }
        let to_f0 = Matrix::from_ints(&f, [[1, 0, 1], [1, -1, -1], [0, 0, -1]]);
        let w = tr.apply(&w, "map 𝓘 onto F(0)", to_f0);
        (SpaceKind::F, Some(Elem::ZERO), w)
    } else {
        (SpaceKind::UT1, None, w)
    };

    let (delta, _w) = match (kind, delta) {
        (SpaceKind::F, Some(d)) => {
            tr.param("delta_raw", d);
            let (rep, w) = canonical_f(&w, &mut tr, d)?;
            (Some(rep), w)
        }
        (SpaceKind::G, Some(d)) => {
            tr.param("delta_raw", d);
            let (rep, w) = canonical_g(&w, &mut tr, d)?;
            (Some(rep), w)
        }
        _ => (None, w),
    };
    if let Some(d) = delta {
        tr.param("delta", d);
    }
    certify(v, SpaceLabel::new(kind, &f, 3, delta), tr)
}
