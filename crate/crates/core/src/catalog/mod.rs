//! Named model spaces and their labels.

mod equiv;
mod invariants;

pub use equiv::{class_representatives, f_equiv, f_representative, g_class, g_equiv, g_representative, j_image};
pub use invariants::{isotropy_check, rank1_span_dim, singular_set_is_subspace, SingularSet};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::linalg::Matrix;
use crate::subspace::MatrixSubspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// K·I_n + NT_n
    UT1,
    F,
    G,
    H,
    /// The α = 0, κ = 1 member of the family reduce4 passes through:
    /// 1̄-spec of dimension 7, similar to neither K·I₄+NT₄ nor 𝓗.
    H0,
    /// Strictly upper-triangular matrices.
    NT,
    /// Trace-zero matrices.
    SL,
    /// K·I₃ ⊕ {x E₀₁ + y E₁₂ + z E₂₀}
    CalI,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 8] = [
        SpaceKind::UT1,
        SpaceKind::F,
        SpaceKind::G,
        SpaceKind::H,
        SpaceKind::H0,
        SpaceKind::NT,
        SpaceKind::SL,
        SpaceKind::CalI,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::UT1 => "UT1",
            SpaceKind::F => "F",
            SpaceKind::G => "G",
            SpaceKind::H => "H",
            SpaceKind::H0 => "H0",
            SpaceKind::NT => "NT",
            SpaceKind::SL => "SL",
            SpaceKind::CalI => "I",
        }
    }

    pub fn takes_delta(self) -> bool {
        matches!(self, SpaceKind::F | SpaceKind::G)
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpaceKind> {
        SpaceKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown space kind '{s}'")))
    }
}

/// Identifies a similarity class: a kind, its size and field, and for F and G
/// the canonical δ representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpaceLabel {
    pub kind: SpaceKind,
    pub delta: Option<Elem>,
    pub n: usize,
    pub field: FieldSpec,
}

impl SpaceLabel {
    pub fn new(kind: SpaceKind, field: &FieldSpec, n: usize, delta: Option<Elem>) -> SpaceLabel {
        SpaceLabel {
            kind,
            delta,
            n,
            field: field.clone(),
        }
    }

    pub fn space(&self) -> Result<MatrixSubspace> {
        make_named(self.kind, &self.field, self.n, self.delta)
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.delta {
            Some(d) => write!(f, "{}({})", self.kind, d),
            None => write!(f, "{}", self.kind),
        }
    }
}

fn mismatch(kind: SpaceKind, requirement: &str) -> Error {
    Error::KindParamMismatch {
        kind: kind.name().to_string(),
        requirement: requirement.to_string(),
    }
}

fn require(kind: SpaceKind, field: &FieldSpec, n: usize, want_n: usize, want_p: u32) -> Result<()> {
    if n != want_n || field.characteristic() != want_p {
        return Err(mismatch(kind, &format!("n = {want_n} and characteristic {want_p}")));
    }
    Ok(())
}

fn nt_generators(f: &FieldSpec, n: usize) -> Vec<Matrix> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| Matrix::elementary(f, n, i, j))
        .collect()
}

fn e_sum(f: &FieldSpec, n: usize, pos: &[(usize, usize)]) -> Matrix {
    pos.iter()
        .fold(Matrix::zero(f, n), |m, &(i, j)| m.add(&Matrix::elementary(f, n, i, j)))
}

/// One generator of 𝓗 per parameter, in the order (l₁, l₂, c₁, c₂, x, y).
pub fn h_parameter_generators(f: &FieldSpec) -> [Matrix; 6] {
    [
        e_sum(f, 4, &[(0, 1), (3, 2)]),
        e_sum(f, 4, &[(0, 2), (3, 1)]),
        e_sum(f, 4, &[(1, 3), (2, 0)]),
        e_sum(f, 4, &[(1, 0), (2, 3)]),
        e_sum(f, 4, &[(0, 3), (2, 1)]),
        e_sum(f, 4, &[(1, 2), (3, 0)]),
    ]
}

/// Generators of the trace-free part of 𝓗₀: those of 𝓗 with the second
/// entry of the l₂, c₁, x and y generators dropped.
pub fn h0_parameter_generators(f: &FieldSpec) -> [Matrix; 6] {
    [
        e_sum(f, 4, &[(0, 1), (3, 2)]),
        e_sum(f, 4, &[(0, 2)]),
        e_sum(f, 4, &[(1, 3)]),
        e_sum(f, 4, &[(1, 0), (2, 3)]),
        e_sum(f, 4, &[(0, 3)]),
        e_sum(f, 4, &[(1, 2)]),
    ]
}

/// The trace-free part of 𝓗 at the given parameters.
pub fn h_matrix(f: &FieldSpec, params: [Elem; 6]) -> Matrix {
    h_parameter_generators(f)
        .iter()
        .zip(params)
        .fold(Matrix::zero(f, 4), |acc, (g, c)| acc.add(&g.scale(c)))
}

/// The three non-identity generators shared by 𝓕_δ and 𝓖_δ, plus the fourth of each.
pub fn fg_generators(f: &FieldSpec, kind: SpaceKind, delta: Elem) -> [Matrix; 4] {
    let a = Matrix::from_ints(f, [[0, 1, 0], [0, 0, 0], [1, 0, 0]]);
    let mut b = Matrix::from_ints(f, [[0, 0, 0], [0, 0, 1], [0, 0, 0]]);
    b.set(2, 0, delta);
    let nd = f.neg(delta);
    let j = match kind {
        SpaceKind::F => {
            let mut m = Matrix::from_ints(f, [[1, 0, 1], [-1, 0, 0], [-1, 0, -1]]);
            m.set(2, 1, nd);
            m
        }
        _ => {
            let mut m = Matrix::from_ints(f, [[0, 0, 1], [-1, 0, 0], [0, 0, 0]]);
            m.set(2, 1, nd);
            m
        }
    };
    [Matrix::identity(f, 3), a, b, j]
}

/// The named space with its defining generators, canonicalized.
pub fn make_named(kind: SpaceKind, field: &FieldSpec, n: usize, delta: Option<Elem>) -> Result<MatrixSubspace> {
    if kind.takes_delta() != delta.is_some() {
        return Err(mismatch(
            kind,
            if kind.takes_delta() {
                "a delta parameter"
            } else {
                "no delta parameter"
            },
        ));
    }
    if let Some(d) = delta {
        field.elem(d.code())?;
    }
    let f = field;
    let gens: Vec<Matrix> = match kind {
        SpaceKind::NT => nt_generators(f, n),
        SpaceKind::UT1 => {
            let mut g = nt_generators(f, n);
            g.push(Matrix::identity(f, n));
            g
        }
        SpaceKind::SL => {
            let mut g: Vec<Matrix> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| Matrix::elementary(f, n, i, j))
                .collect();
            for i in 1..n {
                g.push(Matrix::elementary(f, n, 0, 0).sub(&Matrix::elementary(f, n, i, i)));
            }
            g
        }
        SpaceKind::H => {
            require(kind, f, n, 4, 2)?;
            let mut g = vec![Matrix::identity(f, 4)];
            g.extend(h_parameter_generators(f));
            g
        }
        SpaceKind::H0 => {
            require(kind, f, n, 4, 2)?;
            let mut g = vec![Matrix::identity(f, 4)];
            g.extend(h0_parameter_generators(f));
            g
        }
        SpaceKind::F | SpaceKind::G => {
            require(kind, f, n, 3, 3)?;
            fg_generators(f, kind, delta.expect("checked above")).to_vec()
        }
        SpaceKind::CalI => {
            require(kind, f, n, 3, 3)?;
            vec![
                Matrix::identity(f, 3),
                Matrix::elementary(f, 3, 0, 1),
                Matrix::elementary(f, 3, 1, 2),
                Matrix::elementary(f, 3, 2, 0),
            ]
        }
    };
    MatrixSubspace::span(f, n, &gens)
}
