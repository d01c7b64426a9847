use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use super::{elapsed_ms, field_value, subspace_value, Certificate, SearchStats, Verdict, Witness};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::echelon::Echelon;
use crate::linalg::Matrix;
use crate::subspace::{MatrixSubspace, ENUMERATION_GUARD};

/// Largest group the similarity oracle will exhaust.
pub const GL_GUARD: u128 = 1_000_000_000;

/// |GL_n(q)| = ∏_{i<n} (qⁿ − qⁱ).
pub fn gl_order(q: u32, n: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n as u32).map(|i| qn - (q as u128).pow(i)).product()
}

fn check_order(f: &FieldSpec, n: usize) -> Result<u128> {
    let order = gl_order(f.q(), n);
    if order > GL_GUARD {
        return Err(Error::GroupTooLarge { n, q: f.q(), order });
    }
    Ok(order)
}

/// All of Kⁿ, lexicographic with the first coordinate most significant.
fn vectors(f: &FieldSpec, n: usize) -> Vec<Vec<Elem>> {
    let q = f.q() as usize;
    (0..q.pow(n as u32))
        .map(|mut i| {
            let mut v = vec![Elem::ZERO; n];
            for x in v.iter_mut().rev() {
                *x = f.elem((i % q) as u32).expect("in range");
                i /= q;
            }
            v
        })
        .collect()
}

/// Visits the invertible matrices with the given first row in lexicographic
/// row-major order, stopping at the first `Some`.
fn extend<T>(
    f: &FieldSpec,
    vecs: &[Vec<Elem>],
    rows: &mut Vec<Vec<Elem>>,
    span: &Echelon,
    nodes: &AtomicU64,
    visit: &(impl Fn(&Matrix) -> Option<T> + Sync),
) -> Option<T> {
    let n = vecs[0].len();
    if rows.len() == n {
        nodes.fetch_add(1, Ordering::Relaxed);
        let m = Matrix::from_entries(f, n, rows.concat()).expect("n rows of length n");
        return visit(&m);
    }
    for v in vecs {
        if span.contains(f, v) {
            continue;
        }
        let mut next = span.clone();
        next.insert(f, v.clone());
        rows.push(v.clone());
        let found = extend(f, vecs, rows, &next, nodes, visit);
        rows.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// The first `Some` over GL_n(K) in lexicographic order, partitioned by first row.
fn search<T: Send>(
    f: &FieldSpec,
    n: usize,
    nodes: &AtomicU64,
    visit: impl Fn(&Matrix) -> Option<T> + Sync,
) -> Option<T> {
    let vecs = vectors(f, n);
    vecs[1..].par_iter().find_map_first(|first| {
        let mut span = Echelon::empty(n);
        span.insert(f, first.clone());
        extend(f, &vecs, &mut vec![first.clone()], &span, nodes, &visit)
    })
}

/// GL_n(K) in lexicographic row-major order.
pub fn gl_elements(f: &FieldSpec, n: usize) -> Result<Vec<Matrix>> {
    let order = check_order(f, n)?;
    if order > ENUMERATION_GUARD {
        return Err(Error::TooLarge(order));
    }
    let vecs = vectors(f, n);
    let out = std::sync::Mutex::new(Vec::with_capacity(order as usize));
    let nodes = AtomicU64::new(0);
    // sequential so that the order is preserved
    for first in &vecs[1..] {
        let mut span = Echelon::empty(n);
        span.insert(f, first.clone());
        extend::<()>(f, &vecs, &mut vec![first.clone()], &span, &nodes, &|m| {
            out.lock().expect("not poisoned").push(m.clone());
            None
        });
    }
    Ok(out.into_inner().expect("not poisoned"))
}

/// Whether P·V·P⁻¹ lies in W, for V given by its basis.
fn maps_into(basis: &[Matrix], w: &MatrixSubspace, p: &Matrix) -> bool {
    let pi = match p.inverse() {
        Some(pi) => pi,
        None => return false,
    };
    basis
        .iter()
        .all(|b| w.echelon().contains(w.field(), b.conjugate_by(p, &pi).entries()))
}

fn check_pair(v: &MatrixSubspace, w: &MatrixSubspace) -> Result<()> {
    if v.field() != w.field() {
        return Err(Error::FieldMismatch);
    }
    if v.n() != w.n() {
        return Err(Error::SizeMismatch {
            expected: v.n(),
            got: w.n(),
        });
    }
    if v.dim() != w.dim() {
        return Err(Error::DimMismatch(v.dim(), w.dim()));
    }
    Ok(())
}

/// Decides V ∼ W by trying every P ∈ GL_n(K). The identity is tried first;
/// otherwise the witness is the lexicographically first P with P·V·P⁻¹ = W.
pub fn similar_bruteforce(v: &MatrixSubspace, w: &MatrixSubspace) -> Result<Certificate> {
    check_pair(v, w)?;
    let f = v.field();
    let n = v.n();
    check_order(f, n)?;
    let start = Instant::now();
    let nodes = AtomicU64::new(0);
    let basis = v.basis();
    let found = if v == w {
        nodes.fetch_add(1, Ordering::Relaxed);
        Some(Matrix::identity(f, n))
    } else {
        search(f, n, &nodes, |p| maps_into(&basis, w, p).then(|| p.clone()))
    };
    if let Some(p) = &found {
        if v.conjugate(p)? != *w {
            return Err(Error::Internal("similarity witness failed re-verification".into()));
        }
    }
    let stats = SearchStats {
        nodes: nodes.load(Ordering::Relaxed),
        ms: elapsed_ms(start),
    };
    let claim = json!({
        "type": "similarity",
        "field": field_value(f),
        "n": n,
        "dim": v.dim(),
    });
    let inputs = json!({"a": subspace_value(v), "b": subspace_value(w)});
    let verdict = if found.is_some() {
        Verdict::Holds
    } else {
        Verdict::Refuted
    };
    Ok(Certificate::new(
        claim,
        verdict,
        found.map(Witness::Conjugator),
        stats,
        &inputs,
    ))
}

/// Number of P ∈ GL_n(K) with P·V·P⁻¹ = V.
pub fn stabilizer_order(v: &MatrixSubspace) -> Result<u64> {
    let f = v.field();
    let n = v.n();
    check_order(f, n)?;
    let vecs = vectors(f, n);
    let basis = v.basis();
    let count = AtomicU64::new(0);
    let nodes = AtomicU64::new(0);
    vecs[1..].par_iter().for_each(|first| {
        let mut span = Echelon::empty(n);
        span.insert(f, first.clone());
        extend::<()>(f, &vecs, &mut vec![first.clone()], &span, &nodes, &|p| {
            if maps_into(&basis, v, p) {
                count.fetch_add(1, Ordering::Relaxed);
            }
            None
        });
    });
    Ok(count.into_inner())
}
