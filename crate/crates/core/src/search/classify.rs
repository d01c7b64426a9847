use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{
    elapsed_ms, field_value, gl_order, similar_bruteforce, stabilizer_order, Certificate, SearchStats, Verdict, Witness,
};
use crate::catalog::{isotropy_check, SpaceLabel};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::json::LabelJson;
use crate::linalg::Matrix;
use crate::reduce::reduce3;
use crate::subspace::{spectral_classify, MatrixSubspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub label: SpaceLabel,
    /// Enumerated spaces carrying this label.
    pub size: usize,
    pub stabilizer: u64,
    /// |GL₃(F₃)| / stabilizer.
    pub orbit: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub total: usize,
    pub classes: Vec<ClassEntry>,
    pub all_contain_identity: bool,
    pub all_onebar: bool,
    /// Subspaces (accepted and rejected DFS nodes) on which isotropy and the
    /// 1̄-spec flag were compared, and how many disagreed.
    pub isotropy_checked: usize,
    pub isotropy_mismatches: usize,
    /// similar_bruteforce on every ordered pair of classes agrees with label equality.
    pub oracle_agrees: bool,
    pub orbits_match: bool,
}

impl Classification {
    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.label.to_string()).collect()
    }

    pub fn consistent(&self) -> bool {
        self.all_contain_identity
            && self.all_onebar
            && self.isotropy_mismatches == 0
            && self.oracle_agrees
            && self.orbits_match
            && self.classes.iter().map(|c| c.size).sum::<usize>() == self.total
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "classes": self.classes.iter().map(|c| json!({
                "label": LabelJson::from_label(&c.label),
                "name": c.label.to_string(),
                "size": c.size,
                "stabilizer": c.stabilizer,
                "orbit": c.orbit,
            })).collect::<Vec<_>>(),
            "all_contain_identity": self.all_contain_identity,
            "all_onebar": self.all_onebar,
            "isotropy_checked": self.isotropy_checked,
            "isotropy_mismatches": self.isotropy_mismatches,
            "oracle_agrees": self.oracle_agrees,
            "orbits_match": self.orbits_match,
        })
    }
}

/// Basis of {M ∈ sl₃ : m₀₀ = 0}, a complement of K·I₃ in sl₃.
fn complement_basis(f: &FieldSpec) -> Vec<Matrix> {
    let mut b: Vec<Matrix> = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
        .iter()
        .map(|&(i, j)| Matrix::elementary(f, 3, i, j))
        .collect();
    b.push(Matrix::elementary(f, 3, 1, 1).sub(&Matrix::elementary(f, 3, 2, 2)));
    b
}

struct Search<'a> {
    f: &'a FieldSpec,
    basis: Vec<Matrix>,
    /// tr(T_i T_j)
    gram: Vec<Vec<Elem>>,
    nodes: AtomicU64,
}

impl Search<'_> {
    fn form(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = self.f;
        let mut acc = Elem::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                acc = f.add(acc, f.mul(xi, f.mul(yj, self.gram[i][j])));
            }
        }
        acc
    }

    fn matrix(&self, x: &[Elem]) -> Matrix {
        self.basis
            .iter()
            .zip(x)
            .fold(Matrix::zero(self.f, 3), |acc, (b, &c)| acc.add(&b.scale(c)))
    }

    fn space(&self, rows: &[Vec<Elem>]) -> MatrixSubspace {
        let mut gens = vec![Matrix::identity(self.f, 3)];
        gens.extend(rows.iter().map(|r| self.matrix(r)));
        MatrixSubspace::span(self.f, 3, &gens).expect("same field")
    }

    fn candidates(&self, p: usize, taken: &[usize]) -> Vec<Vec<Elem>> {
        let f = self.f;
        let free: Vec<usize> = (p + 1..7).filter(|c| !taken.contains(c)).collect();
        (0..3u32.pow(free.len() as u32))
            .map(|mut code| {
                let mut r = vec![Elem::ZERO; 7];
                r[p] = Elem::ONE;
                for &c in &free {
                    r[c] = f.elem(code % 3).expect("in range");
                    code /= 3;
                }
                r
            })
            .collect()
    }

    /// Every totally isotropic 3-space of the complement, as echelon rows
    /// built bottom-up. Also returns every (rows + candidate) span visited,
    /// with whether it was accepted.
    fn run(
        &self,
        rows: &mut Vec<Vec<Elem>>,
        pivots: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<Elem>>>,
        visited: &mut Vec<(Vec<Vec<Elem>>, bool)>,
    ) {
        if rows.len() == 3 {
            out.push(rows.clone());
            return;
        }
        let top = pivots.last().copied().unwrap_or(7);
        let k = rows.len();
        for p in (0..top).rev().filter(|&p| k + 1 + p >= 3) {
            for r in self.candidates(p, pivots) {
                self.nodes.fetch_add(1, Ordering::Relaxed);
                let ok = self.form(&r, &r).is_zero() && rows.iter().all(|s| self.form(&r, s).is_zero());
                let mut span = rows.clone();
                span.push(r.clone());
                visited.push((span, ok));
                if !ok {
                    continue;
                }
                rows.push(r);
                pivots.push(p);
                self.run(rows, pivots, out, visited);
                rows.pop();
                pivots.pop();
            }
        }
    }
}

fn label_key(l: &SpaceLabel) -> (crate::catalog::SpaceKind, Option<u32>) {
    (l.kind, l.delta.map(|d| d.code()))
}

/// Enumerates every 4-dimensional 1̄-spec subspace of M₃(F₃) and sorts them
/// into similarity classes.
///
/// These are the totally isotropic 4-spaces of sl₃ for (A, B) ↦ tr(AB); all
/// contain I₃, so they are K·I₃ ⊕ U with U a totally isotropic 3-space of
/// the complement {M ∈ sl₃ : m₀₀ = 0}. Each space is labelled with reduce3.
/// Class sizes are checked against orbit sizes from brute-force stabilizers,
/// and every pair of classes is compared with the similarity oracle.
pub fn classify_exhaustive_n3_char3(f: &FieldSpec) -> Result<Certificate> {
    if f.q() != 3 {
        return Err(Error::UnsupportedField(format!(
            "exhaustive classification is limited to GF(3), got {f}"
        )));
    }
    let start = Instant::now();
    let basis = complement_basis(f);
    let gram = basis
        .iter()
        .map(|a| basis.iter().map(|b| a.mul(b).trace()).collect())
        .collect();
    let s = Search {
        f,
        basis,
        gram,
        nodes: AtomicU64::new(0),
    };
    let mut found = Vec::new();
    let mut visited = Vec::new();
    s.run(&mut Vec::new(), &mut Vec::new(), &mut found, &mut visited);

    // isotropy against the spectral flag on every visited span
    let isotropy_mismatches = visited
        .par_iter()
        .map(|(rows, accepted)| -> Result<usize> {
            let v = s.space(rows);
            let iso = isotropy_check(&v)?;
            let onebar = spectral_classify(&v)?.onebar_spec;
            Ok(usize::from(iso != onebar || iso != *accepted))
        })
        .sum::<Result<usize>>()?;

    let spaces: Vec<MatrixSubspace> = found.iter().map(|rows| s.space(rows)).collect();
    let identity = Matrix::identity(f, 3);
    let checks = spaces
        .par_iter()
        .map(|v| -> Result<(bool, bool, SpaceLabel)> {
            let contains = v.contains(&identity)?;
            let onebar = v.dim() == 4 && spectral_classify(v)?.onebar_spec;
            let (label, _) = reduce3(v)?;
            Ok((contains, onebar, label))
        })
        .collect::<Result<Vec<_>>>()?;
    let all_contain_identity = checks.iter().all(|c| c.0);
    let all_onebar = checks.iter().all(|c| c.1);

    let mut buckets: Vec<(SpaceLabel, Vec<usize>)> = Vec::new();
    for (i, (_, _, label)) in checks.iter().enumerate() {
        match buckets.iter_mut().find(|(l, _)| l == label) {
            Some((_, members)) => members.push(i),
            None => buckets.push((label.clone(), vec![i])),
        }
    }
    buckets.sort_by_key(|(l, _)| label_key(l));

    let group = gl_order(3, 3) as u64;
    let mut classes = Vec::with_capacity(buckets.len());
    for (label, members) in &buckets {
        let stabilizer = stabilizer_order(&label.space()?)?;
        classes.push(ClassEntry {
            label: label.clone(),
            size: members.len(),
            stabilizer,
            orbit: group / stabilizer,
        });
    }
    let orbits_match = classes.iter().all(|c| c.orbit as usize == c.size);

    let mut oracle_agrees = true;
    for (i, (_, members)) in buckets.iter().enumerate() {
        for (j, (target, _)) in buckets.iter().enumerate() {
            let cert = similar_bruteforce(&spaces[members[0]], &target.space()?)?;
            oracle_agrees &= cert.holds() == (i == j);
        }
    }

    let classification = Classification {
        total: spaces.len(),
        classes,
        all_contain_identity,
        all_onebar,
        isotropy_checked: visited.len(),
        isotropy_mismatches,
        oracle_agrees,
        orbits_match,
    };
    let verdict = if classification.consistent() {
        Verdict::Holds
    } else {
        Verdict::Refuted
    };
    let claim = json!({
        "type": "classification",
        "statement": "similarity classes of 4-dimensional 1̄-spec subspaces of M_3",
        "n": 3,
        "dim": 4,
        "field": field_value(f),
    });
    let inputs = json!({"field": field_value(f)});
    let stats = SearchStats {
        nodes: s.nodes.load(Ordering::Relaxed),
        ms: elapsed_ms(start),
    };
    Ok(Certificate::new(
        claim,
        verdict,
        Some(Witness::Classes(classification)),
        stats,
        &inputs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_gf3() {
        assert!(matches!(
            classify_exhaustive_n3_char3(&FieldSpec::gf(9).unwrap()),
            Err(Error::UnsupportedField(_))
        ));
        assert!(matches!(
            classify_exhaustive_n3_char3(&FieldSpec::gf(2).unwrap()),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn complement_form_is_nondegenerate() {
        let f = FieldSpec::gf(3).unwrap();
        let b = complement_basis(&f);
        let rows: Vec<Vec<Elem>> = b.iter().map(|a| b.iter().map(|c| a.mul(c).trace()).collect()).collect();
        let g = Matrix::from_entries(&f, 7, rows.concat()).unwrap();
        assert_eq!(g.rank(), 7);
    }
}
