//! Plain-text renderings for `--format text`.

use std::fmt::Write;

use serde_json::Value;

use onespec_core::catalog::SpaceLabel;
use onespec_core::reduce::ReductionTrace;
use onespec_core::search::{Certificate, Witness};
use onespec_core::{Matrix, MatrixSubspace};

fn matrix(out: &mut String, m: &Matrix, indent: &str) {
    for row in m.rows_codes() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{indent}[{}]", cells.join(" "));
    }
}

pub fn subspace(v: &MatrixSubspace) -> String {
    let mut out = format!("{}-dimensional subspace of M_{} over {}\n", v.dim(), v.n(), v.field());
    for (i, b) in v.basis().iter().enumerate() {
        let _ = writeln!(out, "basis[{i}]");
        matrix(&mut out, b, "  ");
    }
    out
}

pub fn check(v: &MatrixSubspace, report: &Value) -> String {
    let mut out = subspace(v);
    for section in ["flags", "invariants"] {
        if let Some(map) = report[section].as_object() {
            for (k, x) in map {
                let _ = writeln!(out, "{k}: {x}");
            }
        }
    }
    out
}

pub fn reduction(label: &SpaceLabel, trace: &ReductionTrace) -> String {
    let mut out = format!("label: {label}\n");
    for s in &trace.steps {
        let _ = writeln!(out, "step: {}", s.description);
        matrix(&mut out, &s.conjugator, "  ");
    }
    out.push_str("witness\n");
    matrix(&mut out, &trace.accumulated, "  ");
    out
}

pub fn certificate(cert: &Certificate) -> String {
    let mut out = format!(
        "claim: {}\nverdict: {}\nnodes: {}\nms: {}\n",
        cert.claim,
        if cert.holds() { "holds" } else { "refuted" },
        cert.stats.nodes,
        cert.stats.ms
    );
    match &cert.witness {
        Some(Witness::Conjugator(p)) => {
            out.push_str("conjugator\n");
            matrix(&mut out, p, "  ");
        }
        Some(Witness::Counterexample(v)) => {
            out.push_str("counterexample\n");
            out.push_str(&subspace(v));
        }
        Some(Witness::Pair(a, b)) => {
            out.push_str("pair\n");
            matrix(&mut out, a, "  ");
            out.push('\n');
            matrix(&mut out, b, "  ");
        }
        Some(Witness::Classes(c)) => {
            for e in &c.classes {
                let _ = writeln!(
                    out,
                    "{}: {} spaces, stabilizer {}, orbit {}",
                    e.label, e.size, e.stabilizer, e.orbit
                );
            }
        }
        None => {}
    }
    out
}
