use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use super::{elapsed_ms, field_value, Certificate, SearchStats, Verdict, Witness};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::charpoly::matrix_flags;
use crate::linalg::Matrix;
use crate::subspace::{spectral_classify, MatrixSubspace, Predicate};

/// Predicate tables are built when M_n(K) has at most this many elements.
const TABLE_LIMIT: u64 = 1 << 21;

/// Per-matrix predicate, tabulated over all of M_n(K) when that is small.
struct Oracle {
    f: FieldSpec,
    n: usize,
    predicate: Predicate,
    table: Option<Vec<bool>>,
}

impl Oracle {
    fn new(f: &FieldSpec, n: usize, predicate: Predicate) -> Oracle {
        let q = f.q() as u64;
        let size = (n * n) as u32;
        let table = q.checked_pow(size).filter(|&t| t <= TABLE_LIMIT).map(|total| {
            (0..total)
                .into_par_iter()
                .map(|mut code| {
                    let entries = (0..n * n)
                        .map(|_| {
                            let d = (code % q) as u32;
                            code /= q;
                            f.elem(d).expect("in range")
                        })
                        .collect();
                    predicate.holds(&matrix_flags(&Matrix::from_entries(f, n, entries).expect("n²")))
                })
                .collect()
        });
        Oracle {
            f: f.clone(),
            n,
            predicate,
            table,
        }
    }

    fn ok(&self, entries: &[Elem]) -> bool {
        match &self.table {
            Some(t) => {
                let q = self.f.q() as usize;
                let code = entries.iter().rev().fold(0usize, |acc, e| acc * q + e.code() as usize);
                t[code]
            }
            None => {
                let m = Matrix::from_entries(&self.f, self.n, entries.to_vec()).expect("n²");
                self.predicate.holds(&matrix_flags(&m))
            }
        }
    }
}

struct Dfs<'a> {
    oracle: &'a Oracle,
    d: usize,
    prune: bool,
    budget: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

fn add(f: &FieldSpec, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn scaled(f: &FieldSpec, c: Elem, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

impl Dfs<'_> {
    /// Rows with leading 1 at `p`, zero at the `taken` pivot columns, in code order.
    fn candidates(&self, p: usize, taken: &[usize]) -> Vec<Vec<Elem>> {
        let f = &self.oracle.f;
        let len = self.oracle.n * self.oracle.n;
        let free: Vec<usize> = (p + 1..len).filter(|c| !taken.contains(c)).collect();
        let q = f.q() as u64;
        (0..q.pow(free.len() as u32))
            .map(|mut code| {
                let mut r = vec![Elem::ZERO; len];
                r[p] = Elem::ONE;
                for &c in &free {
                    r[c] = f.elem((code % q) as u32).expect("in range");
                    code /= q;
                }
                r
            })
            .collect()
    }

    /// Elements of span(S, r), given all elements of S, if the new ones pass.
    fn extend(&self, elems: &[Vec<Elem>], r: &[Elem]) -> Option<Vec<Vec<Elem>>> {
        let f = &self.oracle.f;
        // nonzero multiples of r + s are covered by scaling invariance
        if self.prune && !elems.iter().all(|s| self.oracle.ok(&add(f, r, s))) {
            return None;
        }
        let mut out = Vec::with_capacity(elems.len() * f.q() as usize);
        for c in f.elements() {
            let cr = scaled(f, c, r);
            out.extend(elems.iter().map(|s| add(f, &cr, s)));
        }
        Some(out)
    }

    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if k > self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    /// Searches below the subspace with the given rows (pivots decreasing).
    fn search(
        &self,
        rows: &mut Vec<Vec<Elem>>,
        pivots: &mut Vec<usize>,
        elems: &[Vec<Elem>],
    ) -> Option<Vec<Vec<Elem>>> {
        let k = rows.len();
        if k == self.d {
            let all_ok = self.prune || elems.iter().all(|e| self.oracle.ok(e));
            return all_ok.then(|| rows.clone());
        }
        let top = pivots.last().copied().unwrap_or(self.oracle.n * self.oracle.n);
        // a new pivot p leaves room for at most p further rows
        for p in (0..top).rev().filter(|&p| k + 1 + p >= self.d) {
            for r in self.candidates(p, pivots) {
                if !self.tick() {
                    return None;
                }
                let Some(next) = self.extend(elems, &r) else { continue };
                rows.push(r);
                pivots.push(p);
                let found = self.search(rows, pivots, &next);
                rows.pop();
                pivots.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    /// Number of d-dimensional subspaces below the given rows that pass.
    fn count(&self, pivots: &mut Vec<usize>, elems: &[Vec<Elem>]) -> u64 {
        let k = pivots.len();
        if k == self.d {
            return u64::from(self.prune || elems.iter().all(|e| self.oracle.ok(e)));
        }
        let top = pivots.last().copied().unwrap_or(self.oracle.n * self.oracle.n);
        let mut total = 0;
        for p in (0..top).rev().filter(|&p| k + 1 + p >= self.d) {
            for r in self.candidates(p, pivots) {
                if !self.tick() {
                    return total;
                }
                let Some(next) = self.extend(elems, &r) else { continue };
                pivots.push(p);
                total += self.count(pivots, &next);
                pivots.pop();
            }
        }
        total
    }

    fn run(&self) -> Option<Vec<Vec<Elem>>> {
        let len = self.oracle.n * self.oracle.n;
        let zero = vec![vec![Elem::ZERO; len]];
        if self.d == 0 {
            return Some(Vec::new());
        }
        let firsts: Vec<(usize, Vec<Elem>)> = (0..len)
            .rev()
            .filter(|&p| 1 + p >= self.d)
            .flat_map(|p| self.candidates(p, &[]).into_iter().map(move |r| (p, r)))
            .collect();
        firsts.par_iter().find_map_first(|(p, r)| {
            if !self.tick() {
                return None;
            }
            let next = self.extend(&zero, r)?;
            self.search(&mut vec![r.clone()], &mut vec![*p], &next)
        })
    }
}

fn run_bound(n: usize, f: &FieldSpec, d: usize, predicate: Predicate, budget: u64, prune: bool) -> Result<Certificate> {
    if budget == 0 {
        return Err(Error::BudgetExceeded(0));
    }
    let start = Instant::now();
    let oracle = Oracle::new(f, n, predicate);
    let found = if d > n * n {
        None
    } else {
        let dfs = Dfs {
            oracle: &oracle,
            d,
            prune,
            budget,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        };
        let found = dfs.run();
        // a find that raced with exhaustion is still a valid counterexample
        if found.is_none() && dfs.exhausted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded(budget));
        }
        let stats_nodes = dfs.nodes.load(Ordering::Relaxed).min(budget);
        Some((found, stats_nodes))
    };
    let (found, nodes) = found.unwrap_or((None, 0));
    let witness = match found {
        Some(rows) => {
            let gens: Vec<Matrix> = rows
                .into_iter()
                .map(|r| Matrix::from_entries(f, n, r).expect("n²"))
                .collect();
            let v = MatrixSubspace::span(f, n, &gens)?;
            if v.dim() != d || !predicate.holds(&spectral_classify(&v)?) {
                return Err(Error::Internal("counterexample failed re-verification".into()));
            }
            Some(Witness::Counterexample(v))
        }
        None => None,
    };
    let claim = json!({
        "type": "dimension_bound",
        "statement": format!("no {d}-dimensional {} subspace of M_{n}", predicate.name()),
        "n": n,
        "field": field_value(f),
        "d": d,
        "predicate": predicate.name(),
        "pruned": prune,
    });
    let inputs = json!({"n": n, "field": field_value(f), "d": d, "predicate": predicate.name()});
    let verdict = if witness.is_some() {
        Verdict::Refuted
    } else {
        Verdict::Holds
    };
    let stats = SearchStats {
        nodes,
        ms: elapsed_ms(start),
    };
    Ok(Certificate::new(claim, verdict, witness, stats, &inputs))
}

/// Holds when M_n(K) has no d-dimensional subspace satisfying `predicate`.
///
/// Depth-first over canonical echelon bases built from the bottom row up:
/// each new row has its pivot left of all existing ones, so every subspace
/// is reached exactly once, through its own lower rows. The predicates are
/// inherited by subspaces, so a failing partial span is pruned with
/// everything below it. Only elements r + s with s in the current span are
/// checked when row r is added.
pub fn verify_dimension_bound(
    n: usize,
    f: &FieldSpec,
    d: usize,
    predicate: Predicate,
    budget: u64,
) -> Result<Certificate> {
    run_bound(n, f, d, predicate, budget, true)
}

/// Number of d-dimensional subspaces of M_n(K) satisfying `predicate`,
/// by the same pruned search run to completion.
pub fn count_subspaces(n: usize, f: &FieldSpec, d: usize, predicate: Predicate, budget: u64) -> Result<u64> {
    let oracle = Oracle::new(f, n, predicate);
    if d > n * n {
        return Ok(0);
    }
    let dfs = Dfs {
        oracle: &oracle,
        d,
        prune: true,
        budget,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let len = n * n;
    let zero = vec![vec![Elem::ZERO; len]];
    let firsts: Vec<(usize, Vec<Elem>)> = (0..len)
        .rev()
        .filter(|&p| d == 0 || 1 + p >= d)
        .flat_map(|p| dfs.candidates(p, &[]).into_iter().map(move |r| (p, r)))
        .collect();
    let total = if d == 0 {
        1
    } else {
        firsts
            .par_iter()
            .map(|(p, r)| match dfs.extend(&zero, r) {
                Some(next) if dfs.tick() => dfs.count(&mut vec![*p], &next),
                _ => 0,
            })
            .sum()
    };
    if dfs.exhausted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(budget));
    }
    Ok(total)
}

/// The same search without pruning: every d-dimensional subspace is built
/// and then checked in full. Only feasible for tiny cases.
pub fn verify_dimension_bound_unpruned(
    n: usize,
    f: &FieldSpec,
    d: usize,
    predicate: Predicate,
    budget: u64,
) -> Result<Certificate> {
    run_bound(n, f, d, predicate, budget, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_named, SpaceKind};

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::gf(q).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let f = gf(2);
        let c = verify_dimension_bound(2, &f, 4, Predicate::OneSpec, 1000).unwrap();
        assert!(c.holds());
        let c = verify_dimension_bound(2, &f, 0, Predicate::Nilpotent, 1000).unwrap();
        assert!(!c.holds());
        assert!(verify_dimension_bound(2, &f, 5, Predicate::OneSpec, 1000)
            .unwrap()
            .holds());
    }

    #[test]
    fn sl2_is_the_witness_in_char_2() {
        let f = gf(2);
        let c = verify_dimension_bound(2, &f, 3, Predicate::OneSpec, 1000).unwrap();
        assert!(!c.holds());
        let sl2 = make_named(SpaceKind::SL, &f, 2, None).unwrap();
        assert_eq!(c.witness, Some(Witness::Counterexample(sl2)));
    }

    #[test]
    fn pruned_and_unpruned_agree_on_2x2_over_gf2() {
        let f = gf(2);
        for p in Predicate::ALL {
            for d in 0..=4 {
                let a = verify_dimension_bound(2, &f, d, p, 1_000_000).unwrap();
                let b = verify_dimension_bound_unpruned(2, &f, d, p, 1_000_000).unwrap();
                assert_eq!(a.verdict, b.verdict, "{p} d={d}");
            }
        }
    }

    #[test]
    fn gerstenhaber_bound_for_n2_over_gf3() {
        let f = gf(3);
        assert!(verify_dimension_bound(2, &f, 2, Predicate::Nilpotent, 1_000_000)
            .unwrap()
            .holds());
        assert!(!verify_dimension_bound(2, &f, 1, Predicate::Nilpotent, 1_000_000)
            .unwrap()
            .holds());
    }

    #[test]
    fn counts_match_gaussian_binomials_and_small_cases() {
        let f = gf(2);
        assert_eq!(count_subspaces(2, &f, 0, Predicate::OneSpec, 1000).unwrap(), 1);
        // 1̄-spec subspaces of M₂(F₂) in char 2 are exactly the subspaces of sl₂: [3 choose d]₂
        let expect = [1, 7, 7, 1, 0];
        for (d, &e) in expect.iter().enumerate() {
            assert_eq!(count_subspaces(2, &f, d, Predicate::OnebarSpec, 1_000_000).unwrap(), e);
        }
        // nilpotent lines of M₂(F₃): nonzero nilpotents number 8, two per line
        assert_eq!(count_subspaces(2, &gf(3), 1, Predicate::Nilpotent, 1000).unwrap(), 4);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let f = gf(2);
        assert_eq!(
            verify_dimension_bound(3, &f, 5, Predicate::OneSpec, 10),
            Err(Error::BudgetExceeded(10))
        );
    }

    #[test]
    fn table_and_direct_evaluation_agree() {
        let f = gf(3);
        let tab = Oracle::new(&f, 2, Predicate::OnebarSpec);
        let direct = Oracle {
            table: None,
            ..Oracle::new(&f, 2, Predicate::OnebarSpec)
        };
        let all = MatrixSubspace::full(&f, 2);
        for m in all.elements().unwrap() {
            assert_eq!(tab.ok(m.entries()), direct.ok(m.entries()));
        }
    }
}
