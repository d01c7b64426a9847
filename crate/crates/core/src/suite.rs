//! The acceptance criteria as runnable checks.
//!
//! Each criterion produces a [`CriterionReport`]: a verdict, the evidence
//! gathered, and the elapsed time against a fixed bound. A criterion passes
//! only if every check holds and it finished within its bound. The CLI
//! `suite` command and the `acceptance` test target both run these.

use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::catalog::{
    class_representatives, f_equiv, g_equiv, h_matrix, make_named, rank1_span_dim, singular_set_is_subspace, SpaceKind,
    SpaceLabel,
};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::{b2, char_poly, ck_coefficients, Matrix, Poly};
use crate::reduce::{reduce, reduce3, ReductionTrace};
use crate::search::{
    classify_exhaustive_n3_char3, default_budget, gl_elements, similar_bruteforce, verify_dimension_bound, Certificate,
    Classification, Witness,
};
use crate::subspace::{spectral_classify, MatrixSubspace, Predicate};

/// Criterion ids, titles and runtime bounds in milliseconds.
pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "characteristic polynomial of the n = 4 family", 1_000),
    (2, "spectral predicates on the catalog", 10_000),
    (3, "subspaces of M2(GF(2))", 1_000),
    (4, "dimension bounds by exhaustive search", 600_000),
    (5, "exhaustive classification over GF(3)", 600_000),
    (6, "similarity oracle against the F and G equivalences", 120_000),
    (7, "non-similarity over GF(3)", 60_000),
    (8, "reduction round trips", 600_000),
    (9, "H against K I4 + NT4 over GF(2)", 60_000),
    (10, "property suites", 120_000),
];

const SEED: u64 = 0x0005_eed1;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub ms: u64,
    pub bound_ms: u64,
    /// Named checks and the evidence behind them.
    pub detail: Value,
}

impl CriterionReport {
    /// One line: id, verdict, title and timing.
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {} ({} ms, bound {} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.ms,
            self.bound_ms
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "criterion": self.id,
            "title": self.title,
            "verdict": if self.passed { "pass" } else { "fail" },
            "stats": {"ms": self.ms, "bound_ms": self.bound_ms},
            "detail": self.detail,
        })
    }
}

/// Named boolean checks with attached evidence.
struct Checks {
    ok: bool,
    items: Map<String, Value>,
}

impl Checks {
    fn new() -> Checks {
        Checks {
            ok: true,
            items: Map::new(),
        }
    }

    fn check(&mut self, name: &str, holds: bool, evidence: Value) {
        self.ok &= holds;
        self.items
            .insert(name.to_string(), json!({"holds": holds, "evidence": evidence}));
    }

    fn finish(self) -> (bool, Value) {
        (self.ok, Value::Object(self.items))
    }
}

/// Runs one criterion. Unknown ids are a parse error.
pub fn run_criterion(id: u8) -> Result<CriterionReport> {
    let &(_, title, bound_ms) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::Parse(format!("no criterion {id}; valid ids are 1 to 10")))?;
    let start = Instant::now();
    let outcome = match id {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(),
        _ => criterion10(),
    };
    let ms = start.elapsed().as_millis() as u64;
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, json!({"error": e.to_string()})));
    Ok(CriterionReport {
        id,
        title,
        passed: ok && ms <= bound_ms,
        ms,
        bound_ms,
        detail,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|c| run_criterion(c.0).expect("listed id"))
        .collect()
}

fn gf(q: u32) -> FieldSpec {
    FieldSpec::gf(q).expect("supported size")
}

/// Every tuple in Kᵐ, first coordinate most significant.
fn tuples(f: &FieldSpec, m: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = f.q() as u64;
    (0..q.pow(m as u32)).map(move |mut i| {
        let mut t = vec![Elem::ZERO; m];
        for x in t.iter_mut().rev() {
            *x = f.elem((i % q) as u32).expect("in range");
            i /= q;
        }
        t
    })
}

/// A uniformly random invertible matrix, by rejection.
pub fn random_gl(f: &FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let e = (0..n * n)
            .map(|_| f.elem(rng.gen_range(0..f.q())).expect("in range"))
            .collect();
        let m = Matrix::from_entries(f, n, e).expect("n²");
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// [n choose k]_q by the product formula.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).map(|i| q.pow(n - i) - 1).product::<u128>() / (1..=k).map(|i| q.pow(i) - 1).product::<u128>()
}

/// Every subspace of M_n(K), grown one vector at a time from {0}.
pub fn all_subspaces(f: &FieldSpec, n: usize) -> Result<Vec<MatrixSubspace>> {
    let full = MatrixSubspace::full(f, n);
    let vectors: Vec<Matrix> = full.elements()?.filter(|m| !m.is_zero()).collect();
    let mut seen: HashSet<MatrixSubspace> = HashSet::new();
    let mut layer = vec![MatrixSubspace::zero(f, n)];
    seen.insert(layer[0].clone());
    while !layer.is_empty() {
        let mut next = Vec::new();
        for v in &layer {
            for m in &vectors {
                if v.contains(m)? {
                    continue;
                }
                let mut gens = v.basis();
                gens.push(m.clone());
                let w = MatrixSubspace::span(f, n, &gens)?;
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<MatrixSubspace> = seen.into_iter().collect();
    out.sort_by_key(|v| (v.dim(), v.basis().iter().map(Matrix::rows_codes).collect::<Vec<_>>()));
    Ok(out)
}

/// Whether the trace is internally consistent and maps `input` onto the label's space.
fn witness_sound(input: &MatrixSubspace, label: &SpaceLabel, trace: &ReductionTrace) -> Result<bool> {
    Ok(trace.product() == trace.accumulated && input.conjugate(&trace.accumulated)? == label.space()?)
}

/// Whether a similarity certificate's witness, if any, maps `v` onto `w`.
fn similarity_sound(cert: &Certificate, v: &MatrixSubspace, w: &MatrixSubspace) -> Result<bool> {
    match (cert.holds(), cert.conjugator()) {
        (true, Some(p)) => Ok(v.conjugate(p)? == *w),
        (false, None) => Ok(true),
        _ => Ok(false),
    }
}

fn h_constant(f: &FieldSpec, t: &[Elem]) -> Elem {
    let [l1, l2, c1, c2, x, y] = [t[0], t[1], t[2], t[3], t[4], t[5]];
    let inner = f.add(f.mul(f.add(l1, l2), f.add(c1, c2)), f.mul(x, y));
    let xy = f.add(x, y);
    f.add(f.mul(inner, inner), f.mul(f.mul(l1, c2), f.mul(xy, xy)))
}

fn criterion1() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    for q in [2, 4] {
        let f = gf(q);
        let mut tested = 0u64;
        let mut failures = 0u64;
        for t in tuples(&f, 6) {
            let m = h_matrix(&f, [t[0], t[1], t[2], t[3], t[4], t[5]]);
            let mut coeffs = vec![Elem::ZERO; 5];
            coeffs[0] = h_constant(&f, &t);
            coeffs[4] = Elem::ONE;
            tested += 1;
            failures += u64::from(char_poly(&m) != Poly::new(&f, coeffs));
        }
        let expected = (q as u64).pow(6);
        c.check(
            &format!("gf{q}"),
            failures == 0 && tested == expected,
            json!({"tuples": tested, "expected_tuples": expected, "mismatches": failures}),
        );
    }
    Ok(c.finish())
}

fn onebar(v: &MatrixSubspace) -> Result<bool> {
    Ok(spectral_classify(v)?.onebar_spec)
}

fn criterion2() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    for q in [2, 3] {
        let f = gf(q);
        for n in 2..=5 {
            let nt = make_named(SpaceKind::NT, &f, n, None)?;
            c.check(
                &format!("NT{n}_gf{q}_nilpotent"),
                spectral_classify(&nt)?.nilpotent,
                json!(nt.dim()),
            );
            let ut = make_named(SpaceKind::UT1, &f, n, None)?;
            c.check(&format!("UT1_{n}_gf{q}_onebar"), onebar(&ut)?, json!(ut.dim()));
        }
    }
    let sl2 = make_named(SpaceKind::SL, &gf(2), 2, None)?;
    c.check("sl2_gf2_onebar", onebar(&sl2)?, json!(sl2.dim()));
    for q in [2, 4] {
        let h = make_named(SpaceKind::H, &gf(q), 4, None)?;
        c.check(&format!("H_gf{q}_onebar"), onebar(&h)?, json!(h.dim()));
    }
    for q in [3, 9] {
        let f = gf(q);
        let mut bad = Vec::new();
        for kind in [SpaceKind::F, SpaceKind::G] {
            for d in f.elements() {
                if !onebar(&make_named(kind, &f, 3, Some(d))?)? {
                    bad.push(format!("{kind}({d})"));
                }
            }
        }
        c.check(
            &format!("F_G_gf{q}_onebar"),
            bad.is_empty(),
            json!({"deltas": q, "failing": bad}),
        );
    }
    Ok(c.finish())
}

fn criterion3() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let f = gf(2);
    let spaces = all_subspaces(&f, 2)?;
    let by_dim: Vec<u128> = (0..=4).map(|k| gaussian_binomial(4, k, 2)).collect();
    let expected: u128 = by_dim.iter().sum();
    let counts: Vec<usize> = (0..=4)
        .map(|k| spaces.iter().filter(|v| v.dim() == k).count())
        .collect();
    c.check(
        "count",
        spaces.len() as u128 == expected && expected == 67 && counts.iter().zip(&by_dim).all(|(&a, &b)| a as u128 == b),
        json!({"enumerated": spaces.len(), "gaussian_sum": expected, "by_dim": counts}),
    );
    let sl2 = make_named(SpaceKind::SL, &f, 2, None)?;
    let mut mismatches = 0;
    let mut onebar_count = 0;
    for v in &spaces {
        let ob = onebar(v)?;
        onebar_count += usize::from(ob);
        mismatches += usize::from(ob != v.is_subspace_of(&sl2)?);
    }
    c.check(
        "onebar_iff_in_sl2",
        mismatches == 0,
        json!({"onebar": onebar_count, "mismatches": mismatches}),
    );
    let one_spec_3: Vec<&MatrixSubspace> = spaces
        .iter()
        .filter(|v| v.dim() == 3)
        .filter(|v| spectral_classify(v).map(|fl| fl.one_spec).unwrap_or(false))
        .collect();
    c.check(
        "unique_3dim_one_spec",
        one_spec_3.len() == 1 && *one_spec_3[0] == sl2,
        json!({"three_dim": counts[3], "one_spec": one_spec_3.len()}),
    );
    Ok(c.finish())
}

fn criterion4() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let f = gf(2);
    for (name, d, pred) in [
        ("one_spec_d5", 5, Predicate::OneSpec),
        ("nilpotent_d4", 4, Predicate::Nilpotent),
    ] {
        let cert = verify_dimension_bound(3, &f, d, pred, default_budget())?;
        c.check(
            name,
            cert.holds() && cert.stats.ms <= 300_000,
            json!({"nodes": cert.stats.nodes, "ms": cert.stats.ms, "bound_ms": 300_000}),
        );
    }
    Ok(c.finish())
}

static CLASSIFICATION: OnceLock<std::result::Result<Classification, Error>> = OnceLock::new();

/// The GF(3) classification, computed once per process.
pub fn gf3_classification() -> Result<Classification> {
    CLASSIFICATION
        .get_or_init(|| {
            let cert = classify_exhaustive_n3_char3(&gf(3))?;
            match cert.witness {
                Some(Witness::Classes(c)) => Ok(c),
                _ => Err(Error::Internal("classification certificate without classes".into())),
            }
        })
        .clone()
}

fn criterion5() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let cl = gf3_classification()?;
    let labels = cl.labels();
    c.check(
        "five_classes",
        labels == ["UT1", "F(0)", "F(1)", "F(2)", "G(0)"],
        json!(labels),
    );
    c.check(
        "every_space_labelled",
        cl.classes.iter().map(|e| e.size).sum::<usize>() == cl.total,
        json!(cl.total),
    );
    c.check("contain_identity", cl.all_contain_identity, json!(null));
    c.check("orbit_stabilizer", cl.orbits_match, cl.to_json()["classes"].clone());
    c.check("oracle_agrees", cl.oracle_agrees, json!("25 ordered pairs"));
    Ok(c.finish())
}

fn criterion6() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let f = gf(3);
    for kind in [SpaceKind::F, SpaceKind::G] {
        let pairs: Vec<(Elem, Elem)> = f.elements().flat_map(|d| f.elements().map(move |l| (d, l))).collect();
        let results = pairs
            .par_iter()
            .map(|&(d, l)| -> Result<(bool, bool, u64)> {
                let v = make_named(kind, &f, 3, Some(d))?;
                let w = make_named(kind, &f, 3, Some(l))?;
                let cert = similar_bruteforce(&v, &w)?;
                let equiv = if kind == SpaceKind::F {
                    f_equiv(&f, d, l)?
                } else {
                    g_equiv(&f, d, l)?
                };
                Ok((
                    cert.holds() == equiv,
                    similarity_sound(&cert, &v, &w)?,
                    cert.stats.nodes,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let agree = results.iter().filter(|r| r.0).count();
        let sound = results.iter().all(|r| r.1);
        let max_nodes = results.iter().map(|r| r.2).max().unwrap_or(0);
        c.check(
            &format!("{kind}_pairs"),
            agree == pairs.len() && sound && max_nodes <= 11_232,
            json!({"pairs": pairs.len(), "agree": agree, "max_conjugations": max_nodes}),
        );
    }
    Ok(c.finish())
}

fn criterion7() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let f = gf(3);
    let ut = make_named(SpaceKind::UT1, &f, 3, None)?;
    let f0 = make_named(SpaceKind::F, &f, 3, Some(Elem::ZERO))?;
    let g0 = make_named(SpaceKind::G, &f, 3, Some(Elem::ZERO))?;
    let cal_i = make_named(SpaceKind::CalI, &f, 3, None)?;
    c.check("F0_vs_G0_refuted", !similar_bruteforce(&f0, &g0)?.holds(), json!(null));
    let mut similar_to_ut1 = Vec::new();
    let mut singular_closed = Vec::new();
    for kind in [SpaceKind::F, SpaceKind::G] {
        for d in f.elements() {
            let v = make_named(kind, &f, 3, Some(d))?;
            if similar_bruteforce(&v, &ut)?.holds() {
                similar_to_ut1.push(format!("{kind}({d})"));
            }
            if singular_set_is_subspace(&v)?.is_subspace {
                singular_closed.push(format!("{kind}({d})"));
            }
        }
    }
    c.check("F_G_vs_UT1_refuted", similar_to_ut1.is_empty(), json!(similar_to_ut1));
    let r_g0 = rank1_span_dim(&g0)?;
    let r_i = rank1_span_dim(&cal_i)?;
    let f0_as_i = similar_bruteforce(&f0, &cal_i)?;
    c.check(
        "rank1_span_dim",
        r_g0 == 1 && r_i == 3 && f0_as_i.holds() && similarity_sound(&f0_as_i, &f0, &cal_i)?,
        json!({"G0": r_g0, "I": r_i, "F0_similar_to_I": f0_as_i.holds()}),
    );
    let ut_closed = singular_set_is_subspace(&ut)?.is_subspace;
    c.check(
        "singular_set_separates",
        ut_closed && singular_closed.is_empty(),
        json!({"UT1": ut_closed, "F_G_with_closed_singular_set": singular_closed}),
    );
    Ok(c.finish())
}

/// Reduces `count` random conjugates of `label`'s space and checks label and witness.
fn round_trips(label: &SpaceLabel, count: usize, seed: u64) -> Result<(usize, usize)> {
    let v = label.space()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conjugators: Vec<Matrix> = (0..count).map(|_| random_gl(&label.field, label.n, &mut rng)).collect();
    let results = conjugators
        .par_iter()
        .map(|p| -> Result<(bool, bool)> {
            let w = v.conjugate(p)?;
            let (got, trace) = reduce(&w)?;
            Ok((got == *label, witness_sound(&w, &got, &trace)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        results.iter().filter(|r| r.0).count(),
        results.iter().filter(|r| r.1).count(),
    ))
}

fn criterion8() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let f3 = gf(3);
    let reps = class_representatives(&f3)?;
    for (i, label) in reps.iter().enumerate() {
        let (correct, sound) = round_trips(label, 100, SEED + i as u64)?;
        c.check(
            &format!("reduce3_{label}"),
            correct == 100 && sound == 100,
            json!({"trials": 100, "correct": correct, "witness_sound": sound}),
        );
    }
    let f2 = gf(2);
    for (i, kind) in [SpaceKind::UT1, SpaceKind::H, SpaceKind::H0].into_iter().enumerate() {
        let label = SpaceLabel::new(kind, &f2, 4, None);
        let (correct, sound) = round_trips(&label, 50, SEED + 100 + i as u64)?;
        c.check(
            &format!("reduce4_{kind}"),
            correct == 50 && sound == 50,
            json!({"trials": 50, "correct": correct, "witness_sound": sound}),
        );
    }
    let group = gl_elements(&f3, 3)?;
    for label in &reps {
        let v = label.space()?;
        let wrong = group
            .par_iter()
            .map(|p| -> Result<usize> {
                let (got, _) = reduce3(&v.conjugate(p)?)?;
                Ok(usize::from(got != *label))
            })
            .sum::<Result<usize>>()?;
        c.check(
            &format!("invariance_{label}"),
            wrong == 0,
            json!({"conjugators": group.len(), "wrong_labels": wrong}),
        );
    }
    Ok(c.finish())
}

fn criterion9() -> Result<(bool, Value)> {
    let mut c = Checks::new();
    let f = gf(2);
    let h = make_named(SpaceKind::H, &f, 4, None)?;
    let ut = make_named(SpaceKind::UT1, &f, 4, None)?;
    let cert = similar_bruteforce(&h, &ut)?;
    c.check(
        "H_vs_UT1_refuted",
        !cert.holds() && cert.stats.nodes == 20_160,
        json!({"conjugators": cert.stats.nodes, "ms": cert.stats.ms}),
    );
    Ok(c.finish())
}

fn c2(m: &Matrix) -> Elem {
    ck_coefficients(m)[1]
}

fn polarization_failures(pairs: impl Iterator<Item = (Matrix, Matrix)>) -> Result<(usize, usize)> {
    let mut total = 0;
    let mut bad = 0;
    for (a, b) in pairs {
        let f = a.field();
        let lhs = f.sub(f.sub(c2(&a.add(&b)), c2(&a)), c2(&b));
        total += 1;
        bad += usize::from(lhs != b2(&a, &b)?);
    }
    Ok((total, bad))
}

fn criterion10() -> Result<(bool, Value)> {
    let mut c = Checks::new();

    let f2 = gf(2);
    let m2: Vec<Matrix> = MatrixSubspace::full(&f2, 2).elements()?.collect();
    let (total, bad) = polarization_failures(m2.iter().flat_map(|a| m2.iter().map(move |b| (a.clone(), b.clone()))))?;
    c.check(
        "b2_exhaustive_m2_gf2",
        total == 256 && bad == 0,
        json!({"pairs": total, "failures": bad}),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 200);
    for (q, n) in [(3, 3), (2, 3), (2, 4), (4, 4)] {
        let f = gf(q);
        let random = |rng: &mut ChaCha8Rng| {
            let e = (0..n * n)
                .map(|_| f.elem(rng.gen_range(0..q)).expect("in range"))
                .collect();
            Matrix::from_entries(&f, n, e).expect("n²")
        };
        let pairs: Vec<(Matrix, Matrix)> = (0..500).map(|_| (random(&mut rng), random(&mut rng))).collect();
        let (total, bad) = polarization_failures(pairs.into_iter())?;
        c.check(
            &format!("b2_sampled_n{n}_gf{q}"),
            bad == 0,
            json!({"pairs": total, "failures": bad}),
        );
    }

    let f3 = gf(3);
    for kind in [SpaceKind::F, SpaceKind::G] {
        let v = make_named(kind, &f3, 3, Some(Elem::ZERO))?;
        let singular: Vec<Matrix> = v.elements()?.filter(|m| m.det().is_zero()).collect();
        let mut triples = 0;
        let mut bad = 0;
        for a in &singular {
            for b in &singular {
                if a.add(b).det().is_zero() {
                    triples += 1;
                    bad += usize::from(!a.mul(b).trace().is_zero());
                }
            }
        }
        c.check(
            &format!("singular_triples_{kind}0"),
            triples > 0 && bad == 0,
            json!({"triples": triples, "nonzero_traces": bad}),
        );
    }

    let cl = gf3_classification()?;
    c.check(
        "isotropy_iff_onebar",
        cl.isotropy_checked > 0 && cl.isotropy_mismatches == 0 && cl.all_onebar,
        json!({"spaces": cl.isotropy_checked, "mismatches": cl.isotropy_mismatches}),
    );

    let mut inputs: Vec<SpaceLabel> = class_representatives(&f3)?;
    inputs.extend(class_representatives(&gf(9))?);
    for q in [2, 4] {
        for kind in [SpaceKind::UT1, SpaceKind::H, SpaceKind::H0] {
            inputs.push(SpaceLabel::new(kind, &gf(q), 4, None));
        }
    }
    let mut sound = 0;
    for (i, label) in inputs.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 300 + i as u64);
        let v = label.space()?.conjugate(&random_gl(&label.field, label.n, &mut rng))?;
        let (got, trace) = reduce(&v)?;
        sound += usize::from(got == *label && witness_sound(&v, &got, &trace)?);
    }
    let g0 = make_named(SpaceKind::G, &f3, 3, Some(Elem::ZERO))?;
    let g1 = make_named(SpaceKind::G, &f3, 3, Some(Elem::ONE))?;
    let cert = similar_bruteforce(&g0, &g1)?;
    let oracle_sound = cert.holds() && similarity_sound(&cert, &g0, &g1)?;
    c.check(
        "witness_soundness",
        sound == inputs.len() && oracle_sound,
        json!({"reductions": inputs.len(), "sound": sound, "similarity_G0_G1": oracle_sound}),
    );
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!((0..=4).map(|k| gaussian_binomial(4, k, 2)).sum::<u128>(), 67);
        assert_eq!(gaussian_binomial(9, 5, 2), 3_309_747);
        assert_eq!(gaussian_binomial(3, 4, 2), 0);
    }

    #[test]
    fn subspace_enumeration_matches_counts() {
        let spaces = all_subspaces(&gf(3), 1).unwrap();
        assert_eq!(spaces.len(), 2);
        let spaces = all_subspaces(&gf(2), 2).unwrap();
        assert_eq!(spaces.len(), 67);
        assert!(spaces.windows(2).all(|w| w[0].dim() <= w[1].dim()));
    }

    #[test]
    fn h_constant_at_unit_vectors() {
        let f = gf(2);
        let mut t = vec![Elem::ZERO; 6];
        assert_eq!(h_constant(&f, &t), Elem::ZERO);
        t[4] = Elem::ONE;
        t[5] = Elem::ONE;
        assert_eq!(h_constant(&f, &t), Elem::ONE);
    }

    #[test]
    fn unknown_criterion() {
        assert!(matches!(run_criterion(11), Err(Error::Parse(_))));
    }

    #[test]
    fn cheap_criteria_pass() {
        for id in [1, 3, 9] {
            let r = run_criterion(id).unwrap();
            assert!(r.passed, "{}: {}", r.line(), r.detail);
        }
    }
}
