//! Common preparation for n = 3 and n = 4: a basis in which e_n is good,
//! J(Z) = NT_{n−1} and R(W) = NT_{n−1}.

use crate::catalog::{make_named, SpaceKind};
use crate::error::Result;
use crate::field::Elem;
use crate::linalg::echelon::{solve_affine, Echelon};
use crate::linalg::Matrix;
use crate::subspace::{good_vectors, restrict_to_line, MatrixSubspace};

use super::triangularize::triangularize_nilpotent;
use super::{internal, ReductionTrace};

/// The only element of V with the prescribed entries.
pub(super) fn unique_element(v: &MatrixSubspace, constraints: &[(usize, usize, Elem)]) -> Result<Matrix> {
    let n = v.n();
    let rows = v.echelon().rows();
    let eqs: Vec<Vec<Elem>> = constraints
        .iter()
        .map(|&(i, j, _)| rows.iter().map(|b| b[i * n + j]).collect())
        .collect();
    let rhs: Vec<Elem> = constraints.iter().map(|c| c.2).collect();
    let (x, hom) = solve_affine(v.field(), rows.len(), &eqs, &rhs)
        .ok_or_else(|| internal("expected family matrix is missing from the space"))?;
    if !hom.is_empty() {
        return Err(internal("family matrix is not determined by its entries"));
    }
    Ok(v.combine(&x))
}

/// The elements of V vanishing at every listed position.
pub(super) fn zero_at(v: &MatrixSubspace, positions: &[(usize, usize)]) -> MatrixSubspace {
    let f = v.field();
    let n = v.n();
    let rows = v.echelon().rows();
    let eqs: Vec<Vec<Elem>> = positions
        .iter()
        .map(|&(i, j)| rows.iter().map(|b| b[i * n + j]).collect())
        .collect();
    let sols = crate::linalg::echelon::nullspace(f, rows.len(), &eqs);
    let gens = sols.iter().map(|s| v.combine(s).into_entries());
    MatrixSubspace::from_echelon(f, n, Echelon::from_rows(f, n * n, gens))
}

fn blocks(v: &MatrixSubspace, idx: &[usize]) -> MatrixSubspace {
    let gens: Vec<Matrix> = v.basis().iter().map(|m| m.submatrix(idx)).collect();
    MatrixSubspace::span_unchecked(v.field(), idx.len(), &gens)
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// J(Z): top-left blocks of the elements with zero last column.
fn j_of_z(v: &MatrixSubspace) -> MatrixSubspace {
    let n = v.n();
    let z = zero_at(v, &(0..n).map(|i| (i, n - 1)).collect::<Vec<_>>());
    blocks(&z, &(0..n - 1).collect::<Vec<_>>())
}

/// R(W): bottom-right blocks of the elements with zero first row.
fn r_of_w(v: &MatrixSubspace) -> MatrixSubspace {
    let n = v.n();
    let w = zero_at(v, &(0..n).map(|j| (0, j)).collect::<Vec<_>>());
    blocks(&w, &(1..n).collect::<Vec<_>>())
}

/// Conjugates V into a position satisfying all three setup conditions.
pub(super) fn establish_conditions(v: &MatrixSubspace, trace: &mut ReductionTrace) -> Result<MatrixSubspace> {
    let f = v.field().clone();
    let n = v.n();

    // a good vector becomes the last basis vector
    let x = good_vectors(v)
        .into_iter()
        .next()
        .ok_or_else(|| internal("no good vector"))?;
    let lead = x.iter().position(|c| !c.is_zero()).expect("projective point");
    let mut cols: Vec<Vec<Elem>> = (0..n)
        .filter(|&i| i != lead)
        .map(|i| {
            let mut e = vec![Elem::ZERO; n];
            e[i] = Elem::ONE;
            e
        })
        .collect();
    cols.push(x);
    let q = Matrix::from_columns(&f, &cols);
    let v = trace.apply(v, "move the first good vector to e_n", q.inverse().expect("basis"));

    // triangularize J(Z)
    let jz = j_of_z(&v);
    if jz.dim() != binom2(n - 1) {
        return Err(internal("J(Z) does not have maximal nilpotent dimension"));
    }
    let p = triangularize_nilpotent(&jz)?;
    let v = trace.apply(
        &v,
        "triangularize J(Z) by diag(P, 1)",
        Matrix::block_diag(&p, &Matrix::identity(&f, 1)),
    );

    // every last column of R(W) reads (C, L₁·C); shear so that R(W) = NT_{n−1}
    let rw = r_of_w(&v);
    let m = n - 1;
    let eqs: Vec<Vec<Elem>> = rw
        .basis()
        .iter()
        .map(|r| (0..m - 1).map(|i| r.get(i, m - 1)).collect())
        .collect();
    let rhs: Vec<Elem> = rw.basis().iter().map(|r| r.get(m - 1, m - 1)).collect();
    let (l1, _) = solve_affine(&f, m - 1, &eqs, &rhs).ok_or_else(|| internal("no L₁ for R(W)"))?;
    let mut qm = Matrix::identity(&f, m);
    for (j, &l) in l1.iter().enumerate() {
        qm.set(m - 1, j, f.neg(l));
    }
    let v = trace.apply(
        &v,
        "shear R(W) onto NT_{n-1} by diag(1, Q)",
        Matrix::block_diag(&Matrix::identity(&f, 1), &qm),
    );

    let mut en = vec![Elem::ZERO; n];
    en[n - 1] = Elem::ONE;
    let nt = make_named(SpaceKind::NT, &f, n - 1, None)?;
    if restrict_to_line(&v, &en)?.dim() != 0 || j_of_z(&v) != nt || r_of_w(&v) != nt {
        return Err(internal("setup conditions failed after conjugation"));
    }
    Ok(v)
}
