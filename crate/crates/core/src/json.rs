//! JSON forms of fields, matrices, subspaces and labels. Elements are always
//! written as integer codes.

use serde::{Deserialize, Serialize};

use crate::catalog::{SpaceKind, SpaceLabel};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Matrix;
use crate::subspace::MatrixSubspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub field: FieldJson,
    pub n: usize,
    pub generators: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<u32>,
    pub n: usize,
    pub field: FieldJson,
}

impl FieldJson {
    pub fn from_field(f: &FieldSpec) -> FieldJson {
        FieldJson {
            p: f.p(),
            k: f.k(),
            modulus: (f.k() > 1).then(|| f.modulus().to_vec()),
        }
    }

    pub fn to_field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.k, self.modulus.as_deref())
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &Matrix) -> MatrixJson {
        MatrixJson {
            n: m.n(),
            rows: m.rows_codes(),
        }
    }

    pub fn to_matrix(&self, f: &FieldSpec) -> Result<Matrix> {
        if self.rows.len() != self.n {
            return Err(Error::Parse(format!(
                "matrix declares n = {} but has {} rows",
                self.n,
                self.rows.len()
            )));
        }
        Matrix::from_codes(f, &self.rows)
    }
}

impl SubspaceJson {
    pub fn from_subspace(v: &MatrixSubspace) -> SubspaceJson {
        SubspaceJson {
            field: FieldJson::from_field(v.field()),
            n: v.n(),
            generators: v.basis().iter().map(MatrixJson::from_matrix).collect(),
        }
    }

    /// Re-canonicalizes, so any generating set is accepted.
    pub fn to_subspace(&self) -> Result<MatrixSubspace> {
        let f = self.field.to_field()?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                if g.n != self.n {
                    return Err(Error::SizeMismatch {
                        expected: self.n,
                        got: g.n,
                    });
                }
                g.to_matrix(&f)
            })
            .collect::<Result<Vec<_>>>()?;
        MatrixSubspace::span(&f, self.n, &gens)
    }
}

impl LabelJson {
    pub fn from_label(l: &SpaceLabel) -> LabelJson {
        LabelJson {
            kind: l.kind.name().to_string(),
            delta: l.delta.map(|d| d.code()),
            n: l.n,
            field: FieldJson::from_field(&l.field),
        }
    }

    pub fn to_label(&self) -> Result<SpaceLabel> {
        let f = self.field.to_field()?;
        let kind: SpaceKind = self.kind.parse()?;
        let delta = self.delta.map(|c| f.elem(c)).transpose()?;
        Ok(SpaceLabel::new(kind, &f, self.n, delta))
    }
}

pub fn subspace_to_string(v: &MatrixSubspace) -> String {
    serde_json::to_string_pretty(&SubspaceJson::from_subspace(v)).expect("plain data")
}

pub fn subspace_from_str(s: &str) -> Result<MatrixSubspace> {
    let j: SubspaceJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_subspace()
}
