//! Constructive reductions of maximal 1̄-spec spaces to the model spaces.
//!
//! Every reduction records its conjugators. The product is checked against
//! the named target before a label is returned, so a label always comes with
//! a witness P such that P·V·P⁻¹ is exactly the model space.

mod reduce3;
mod reduce4;
mod setup;
mod triangularize;

pub use reduce3::reduce3;
pub use reduce4::reduce4;
pub use triangularize::triangularize_nilpotent;

use std::collections::BTreeMap;

use crate::catalog::SpaceLabel;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::subspace::MatrixSubspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub description: String,
    pub conjugator: Matrix,
}

/// Record of a reduction: each conjugation applied, their product, the
/// scalars read off along the way and the intermediate family matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
    pub accumulated: Matrix,
    pub params: BTreeMap<String, Elem>,
    pub families: Vec<(String, Matrix)>,
}

impl ReductionTrace {
    fn new(v: &MatrixSubspace) -> ReductionTrace {
        ReductionTrace {
            steps: Vec::new(),
            accumulated: Matrix::identity(v.field(), v.n()),
            params: BTreeMap::new(),
            families: Vec::new(),
        }
    }

    /// Replaces `v` by P·v·P⁻¹ and records P. Identity conjugators are skipped.
    fn apply(&mut self, v: &MatrixSubspace, description: &str, p: Matrix) -> MatrixSubspace {
        if p == Matrix::identity(v.field(), v.n()) {
            return v.clone();
        }
        let pi = p.inverse().expect("reduction conjugators are invertible");
        let w = v.conjugate_with(&p, &pi);
        self.accumulated = p.mul(&self.accumulated);
        self.steps.push(Step {
            description: description.to_string(),
            conjugator: p,
        });
        w
    }

    fn param(&mut self, name: &str, x: Elem) {
        self.params.insert(name.to_string(), x);
    }

    fn family(&mut self, name: &str, m: &Matrix) {
        self.families.push((name.to_string(), m.clone()));
    }

    /// Ordered product of the step conjugators, recomputed from scratch.
    pub fn product(&self) -> Matrix {
        let id = Matrix::identity(self.accumulated.field(), self.accumulated.n());
        self.steps.iter().fold(id, |acc, s| s.conjugator.mul(&acc))
    }
}

/// Dispatches on (n, characteristic): reduce3 for (3, 3), reduce4 for (4, 2).
pub fn reduce(v: &MatrixSubspace) -> Result<(SpaceLabel, ReductionTrace)> {
    match (v.n(), v.field().characteristic()) {
        (3, 3) => reduce3(v),
        (4, 2) => reduce4(v),
        (n, p) => Err(Error::PreconditionViolated(format!(
            "no reduction for n = {n} in characteristic {p}; supported: n = 3 with characteristic 3, n = 4 with characteristic 2"
        ))),
    }
}

/// Final check shared by both reductions.
fn certify(input: &MatrixSubspace, label: SpaceLabel, trace: ReductionTrace) -> Result<(SpaceLabel, ReductionTrace)> {
    let target = label.space()?;
    let image = input.conjugate(&trace.accumulated)?;
    if image != target {
        return Err(Error::Internal(format!(
            "reduction witness does not map the input onto {label}"
        )));
    }
    Ok((label, trace))
}

fn internal(msg: &str) -> Error {
    Error::Internal(msg.to_string())
}
