use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::echelon::{nullspace, Echelon};

use super::MatrixSubspace;

/// V_X: the elements of V whose every column lies in K·X.
pub fn restrict_to_line(v: &MatrixSubspace, x: &[Elem]) -> Result<MatrixSubspace> {
    let n = v.n();
    if x.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if x.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let f = v.field();
    let line = Echelon::from_rows(f, n, [x.to_vec()]);
    let rows = v.echelon().rows();
    // a · column_j(M) = 0 for every functional a vanishing on X and every column j
    let mut eqs = Vec::new();
    for a in line.annihilator(f) {
        for j in 0..n {
            eqs.push(
                rows.iter()
                    .map(|b| (0..n).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(a[i], b[i * n + j]))))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let sols = nullspace(f, rows.len(), &eqs);
    let gens = sols.iter().map(|s| v.combine(s).into_entries());
    Ok(MatrixSubspace::from_echelon(f, n, Echelon::from_rows(f, n * n, gens)))
}

/// Projective points of K^n with first nonzero coordinate 1, in lexicographic
/// order of their coordinate codes.
pub fn projective_points(f: &FieldSpec, n: usize) -> Vec<Vec<Elem>> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        for t in 0..q.pow(tail as u32) {
            let mut x = vec![Elem::ZERO; n];
            x[lead] = Elem::ONE;
            let mut rest = t;
            for i in (lead + 1..n).rev() {
                x[i] = Elem::from_code_unchecked((rest % q) as u32);
                rest /= q;
            }
            out.push(x);
        }
    }
    out
}

/// Every projective X with V_X = {0}.
pub fn good_vectors(v: &MatrixSubspace) -> Vec<Vec<Elem>> {
    projective_points(v.field(), v.n())
        .into_iter()
        .filter(|x| restrict_to_line(v, x).expect("x is nonzero of length n").dim() == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn nt(f: &FieldSpec, n: usize) -> MatrixSubspace {
        let g: Vec<Matrix> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| Matrix::elementary(f, n, i, j))
            .collect();
        MatrixSubspace::span(f, n, &g).unwrap()
    }

    fn e(f: &FieldSpec, codes: &[u32]) -> Vec<Elem> {
        codes.iter().map(|&c| f.elem(c).unwrap()).collect()
    }

    #[test]
    fn projective_order() {
        let f = FieldSpec::gf(2).unwrap();
        let pts = projective_points(&f, 3);
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], e(&f, &[0, 0, 1]));
        assert_eq!(pts[1], e(&f, &[0, 1, 0]));
        assert_eq!(pts[2], e(&f, &[0, 1, 1]));
        assert_eq!(pts[3], e(&f, &[1, 0, 0]));
        assert_eq!(pts[6], e(&f, &[1, 1, 1]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
        assert_eq!(projective_points(&FieldSpec::gf(3).unwrap(), 3).len(), 13);
    }

    #[test]
    fn restriction_examples() {
        let f = FieldSpec::gf(3).unwrap();
        let v = restrict_to_line(&nt(&f, 3), &e(&f, &[1, 0, 0])).unwrap();
        assert_eq!(
            v,
            MatrixSubspace::span(
                &f,
                3,
                &[Matrix::elementary(&f, 3, 0, 1), Matrix::elementary(&f, 3, 0, 2)]
            )
            .unwrap()
        );
        let ut = nt(&f, 3)
            .sum(&MatrixSubspace::span(&f, 3, &[Matrix::identity(&f, 3)]).unwrap())
            .unwrap();
        assert_eq!(restrict_to_line(&ut, &e(&f, &[0, 0, 1])).unwrap().dim(), 0);
        assert_eq!(restrict_to_line(&ut, &e(&f, &[0, 0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn sl2_gf2_has_no_good_vector() {
        let f = FieldSpec::gf(2).unwrap();
        let sl2 = MatrixSubspace::span(
            &f,
            2,
            &[
                Matrix::elementary(&f, 2, 0, 1),
                Matrix::elementary(&f, 2, 1, 0),
                Matrix::identity(&f, 2),
            ],
        )
        .unwrap();
        let r = restrict_to_line(&sl2, &e(&f, &[1, 0])).unwrap();
        assert_eq!(
            r,
            MatrixSubspace::span(&f, 2, &[Matrix::elementary(&f, 2, 0, 1)]).unwrap()
        );
        assert!(good_vectors(&sl2).is_empty());
    }

    #[test]
    fn ut1_gf2_good_vectors() {
        let f = FieldSpec::gf(2).unwrap();
        let ut = nt(&f, 3)
            .sum(&MatrixSubspace::span(&f, 3, &[Matrix::identity(&f, 3)]).unwrap())
            .unwrap();
        let good = good_vectors(&ut);
        assert_eq!(good.len(), 4);
        assert!(good.iter().all(|x| !x[2].is_zero()));
    }

    #[test]
    fn restriction_dim_counts_rank_one_elements() {
        // |V_X| − 1 equals the number of rank-1 elements with image in K·X
        let f = FieldSpec::gf(3).unwrap();
        let v = nt(&f, 3)
            .sum(&MatrixSubspace::span(&f, 3, &[Matrix::elementary(&f, 3, 1, 0)]).unwrap())
            .unwrap();
        for x in projective_points(&f, 3) {
            let line = Echelon::from_rows(&f, 3, [x.clone()]);
            let direct = v
                .elements()
                .unwrap()
                .filter(|m| m.rank() == 1 && (0..3).all(|j| line.contains(&f, &m.column(j))))
                .count() as u128;
            assert_eq!(restrict_to_line(&v, &x).unwrap().cardinality() - 1, direct);
        }
    }
}
