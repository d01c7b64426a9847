use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::echelon::{nullspace, Echelon};
use crate::linalg::Matrix;
use crate::subspace::{spectral_classify, MatrixSubspace};

/// A conjugator P with P·N·P⁻¹ strictly upper-triangular for every N in the space.
///
/// Builds the flag U₀ = {0}, U_{i+1} = {x : Mx ∈ U_i for all M}, then takes
/// a basis adapted to it (each step extended by the first new vectors of the
/// echelon basis of U_{i+1}). With Q holding that basis as columns, Q⁻¹ N Q
/// maps each basis vector into the span of the earlier ones, so P = Q⁻¹.
pub fn triangularize_nilpotent(space: &MatrixSubspace) -> Result<Matrix> {
    let f = space.field();
    let n = space.n();
    let basis = space.basis();
    let mut flag = Echelon::empty(n);
    let mut adapted: Vec<Vec<Elem>> = Vec::with_capacity(n);
    while flag.rank() < n {
        let ann = flag.annihilator(f);
        // x ∈ U_{i+1} iff (aM)·x = 0 for every a vanishing on U_i and every M
        let eqs: Vec<Vec<Elem>> = ann
            .iter()
            .flat_map(|a| {
                basis.iter().map(move |m| {
                    (0..n)
                        .map(|j| (0..n).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(a[i], m.get(i, j)))))
                        .collect()
                })
            })
            .collect();
        let next = Echelon::from_rows(f, n, nullspace(f, n, &eqs));
        if next.rank() == flag.rank() {
            return Err(if spectral_classify(space)?.nilpotent {
                Error::NotTriangularizable
            } else {
                Error::NotNilpotent
            });
        }
        for v in next.rows() {
            if flag.insert(f, v.clone()) {
                adapted.push(v.clone());
            }
        }
    }
    let q = Matrix::from_columns(f, &adapted);
    Ok(q.inverse().expect("adapted basis is a basis"))
}
