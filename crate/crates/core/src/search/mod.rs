//! Brute-force oracles: similarity by exhausting GL_n(q), dimension bounds by
//! pruned depth-first search, and the full classification over GF(3).

mod bound;
mod classify;
mod gl;

pub use bound::{count_subspaces, verify_dimension_bound, verify_dimension_bound_unpruned};
pub use classify::{classify_exhaustive_n3_char3, ClassEntry, Classification};
pub use gl::{gl_elements, gl_order, similar_bruteforce, stabilizer_order, GL_GUARD};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::json::{FieldJson, MatrixJson, SubspaceJson};
use crate::linalg::Matrix;
use crate::subspace::MatrixSubspace;

/// Default node budget for the bound search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// The node budget, taken from `ONESPEC_BUDGET` when set to a positive integer.
pub fn default_budget() -> u64 {
    std::env::var("ONESPEC_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&b| b >= 1)
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Conjugator(Matrix),
    Counterexample(MatrixSubspace),
    Pair(Matrix, Matrix),
    Classes(Classification),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub ms: u64,
}

/// A completed search: what was asked, the answer, and the evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub claim: Value,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
    pub input_digest: String,
}

impl Certificate {
    pub(crate) fn new(
        claim: Value,
        verdict: Verdict,
        witness: Option<Witness>,
        stats: SearchStats,
        inputs: &Value,
    ) -> Self {
        Certificate {
            claim,
            verdict,
            witness,
            stats,
            input_digest: digest(inputs),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn conjugator(&self) -> Option<&Matrix> {
        match &self.witness {
            Some(Witness::Conjugator(p)) => Some(p),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let witness = match &self.witness {
            None => Value::Null,
            Some(Witness::Conjugator(p)) => json!({"conjugator": MatrixJson::from_matrix(p)}),
            Some(Witness::Counterexample(v)) => json!({"subspace": SubspaceJson::from_subspace(v)}),
            Some(Witness::Pair(a, b)) => json!({"pair": [MatrixJson::from_matrix(a), MatrixJson::from_matrix(b)]}),
            Some(Witness::Classes(c)) => json!({"classification": c.to_json()}),
        };
        json!({
            "claim": self.claim,
            "verdict": self.verdict,
            "witness": witness,
            "stats": self.stats,
            "input_digest": self.input_digest,
        })
    }
}

/// SHA-256 of the compact JSON encoding, hex.
pub fn digest(inputs: &Value) -> String {
    hex::encode(Sha256::digest(inputs.to_string().as_bytes()))
}

pub(crate) fn subspace_value(v: &MatrixSubspace) -> Value {
    serde_json::to_value(SubspaceJson::from_subspace(v)).expect("plain data")
}

pub(crate) fn field_value(f: &crate::field::FieldSpec) -> Value {
    serde_json::to_value(FieldJson::from_field(f)).expect("plain data")
}

pub(crate) fn elapsed_ms(start: std::time::Instant) -> u64 {
    start.elapsed().as_millis() as u64
}
