//! Characteristic polynomials and the per-matrix spectral tests built on them.
//!
//! Everything here is division-free in the ring sense: Berkowitz's recurrence
//! for general n and principal-minor sums for n ≤ 4. Both stay exact in
//! characteristic 2 and 3, where trace-power methods break down.

use crate::error::Result;
use crate::field::{Elem, FieldSpec};
use crate::linalg::matrix::Matrix;
use crate::linalg::poly::Poly;

/// det(xI − M), monic of degree n.
pub fn char_poly(m: &Matrix) -> Poly {
    if m.n() <= 4 {
        char_poly_minors(m)
    } else {
        char_poly_berkowitz(m)
    }
}

/// Berkowitz recurrence on leading principal submatrices.
///
/// With A_k = [[B, C], [R, a]], det(xI − A_k) = (x − a)·p_B − R·adj(xI − B)·C,
/// and adj(xI − B) = Σ_j B^j h_j(x) with h_j = Σ_{i>j} b_i x^{i−j−1}.
pub fn char_poly_berkowitz(m: &Matrix) -> Poly {
    let f = m.field();
    let mut p = Poly::one(f);
    for k in 0..m.n() {
        let a = m.get(k, k);
        let mut next = p.mul(&Poly::linear(f, a));
        if k > 0 {
            let idx: Vec<usize> = (0..k).collect();
            let b = m.submatrix(&idx);
            let r: Vec<Elem> = (0..k).map(|j| m.get(k, j)).collect();
            let mut v: Vec<Elem> = (0..k).map(|i| m.get(i, k)).collect();
            let bc = p.coeffs().to_vec();
            for j in 0..k {
                // v = B^j C
                let s = crate::linalg::echelon::dot(f, &r, &v);
                if !s.is_zero() {
                    let h: Vec<Elem> = (j + 1..=k).map(|i| bc[i]).collect();
                    next = next.sub(&Poly::new(f, h).scale(s));
                }
                v = b.mul_vec(&v);
            }
        }
        p = next;
    }
    p
}

/// Coefficients from sums of principal minors: a_{n−k} = (−1)^k Σ minors_k.
pub fn char_poly_minors(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.n();
    let mut sums = vec![Elem::ZERO; n + 1];
    sums[0] = Elem::ONE;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let d = leibniz_det(&m.submatrix(&idx));
        sums[idx.len()] = f.add(sums[idx.len()], d);
    }
    let coeffs = (0..=n)
        .map(|i| {
            let k = n - i;
            if k.is_multiple_of(2) {
                sums[k]
            } else {
                f.neg(sums[k])
            }
        })
        .collect();
    Poly::new(f, coeffs)
}

/// Determinant as a signed sum over permutations.
pub(crate) fn leibniz_det(m: &Matrix) -> Elem {
    let f = m.field();
    let n = m.n();
    let mut total = Elem::ZERO;
    for_each_permutation(n, |perm, odd| {
        let mut t = Elem::ONE;
        for (i, &j) in perm.iter().enumerate() {
            t = f.mul(t, m.get(i, j));
            if t.is_zero() {
                return;
            }
        }
        total = if odd { f.sub(total, t) } else { f.add(total, t) };
    });
    total
}

/// Heap's algorithm, reporting each permutation with its parity.
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize], bool)) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut odd = false;
    visit(&perm, odd);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            odd = !odd;
            visit(&perm, odd);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// (c₁(M), …, c_n(M)) with c_k = (−1)^k a_{n−k}; c₁ is the trace, c_n the determinant.
pub fn ck_coefficients(m: &Matrix) -> Vec<Elem> {
    let f = m.field();
    let p = char_poly(m);
    let n = m.n();
    (1..=n)
        .map(|k| {
            let a = p.coeff(n - k);
            if k % 2 == 0 {
                a
            } else {
                f.neg(a)
            }
        })
        .collect()
}

/// Polar form of c₂: tr(A)tr(B) − tr(AB).
pub fn b2(a: &Matrix, b: &Matrix) -> Result<Elem> {
    a.check_compatible(b)?;
    let f = a.field();
    Ok(f.sub(f.mul(a.trace(), b.trace()), a.mul(b).trace()))
}

/// Roots of the characteristic polynomial in the base field.
pub fn eigenvalues_in_k(m: &Matrix) -> Vec<Elem> {
    char_poly(m).roots()
}

/// The sole eigenvalue over the algebraic closure, if there is one.
///
/// Over a finite field a characteristic polynomial μ^k with μ irreducible of
/// degree d has d distinct roots in K̄, so a single K̄-eigenvalue forces d = 1
/// and it suffices to look for λ ∈ K with char_poly = (x − λ)^n.
pub fn single_eigenvalue_kbar(m: &Matrix) -> Option<Elem> {
    let p = char_poly(m);
    single_root_power(&p, m.n())
}

pub(crate) fn single_root_power(p: &Poly, n: usize) -> Option<Elem> {
    let f = p.field();
    let lambda = p.roots().into_iter().next()?;
    if Poly::linear(f, lambda).pow(n as u32) == *p {
        Some(lambda)
    } else {
        None
    }
}

/// The four per-matrix predicates behind the subspace flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MatrixFlags {
    pub one_spec: bool,
    pub onebar_spec: bool,
    pub trivial_spectrum: bool,
    pub nilpotent: bool,
}

impl MatrixFlags {
    pub const ALL: MatrixFlags = MatrixFlags {
        one_spec: true,
        onebar_spec: true,
        trivial_spectrum: true,
        nilpotent: true,
    };

    pub fn and(self, o: MatrixFlags) -> MatrixFlags {
        MatrixFlags {
            one_spec: self.one_spec && o.one_spec,
            onebar_spec: self.onebar_spec && o.onebar_spec,
            trivial_spectrum: self.trivial_spectrum && o.trivial_spectrum,
            nilpotent: self.nilpotent && o.nilpotent,
        }
    }
}

pub fn matrix_flags(m: &Matrix) -> MatrixFlags {
    let p = char_poly(m);
    flags_of_char_poly(&p, m.n())
}

pub(crate) fn flags_of_char_poly(p: &Poly, n: usize) -> MatrixFlags {
    let roots = p.roots();
    let nilpotent = *p == Poly::monomial(p.field(), n);
    MatrixFlags {
        one_spec: roots.len() <= 1,
        onebar_spec: nilpotent || single_root_power(p, n).is_some(),
        trivial_spectrum: roots.iter().all(|r| r.is_zero()),
        nilpotent,
    }
}

/// Companion matrix of a monic polynomial (last column holds −a_i).
pub fn companion(f: &FieldSpec, p: &Poly) -> Matrix {
    let n = p.degree().expect("nonzero polynomial");
    let mut m = Matrix::zero(f, n);
    for i in 1..n {
        m.set(i, i - 1, Elem::ONE);
    }
    for i in 0..n {
        m.set(i, n - 1, f.neg(p.coeff(i)));
    }
    m
}
