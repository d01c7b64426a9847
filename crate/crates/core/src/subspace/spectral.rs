use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::charpoly::{matrix_flags, MatrixFlags};

use super::MatrixSubspace;

/// Subspace-level flags: each holds when it holds for every element.
pub type SpectralFlags = MatrixFlags;

/// The four spectral predicates, as selectable properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    OneSpec,
    OnebarSpec,
    TrivialSpectrum,
    Nilpotent,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [
        Predicate::OneSpec,
        Predicate::OnebarSpec,
        Predicate::TrivialSpectrum,
        Predicate::Nilpotent,
    ];

    pub fn holds(self, flags: &MatrixFlags) -> bool {
        match self {
            Predicate::OneSpec => flags.one_spec,
            Predicate::OnebarSpec => flags.onebar_spec,
            Predicate::TrivialSpectrum => flags.trivial_spectrum,
            Predicate::Nilpotent => flags.nilpotent,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::OneSpec => "one_spec",
            Predicate::OnebarSpec => "onebar_spec",
            Predicate::TrivialSpectrum => "trivial_spectrum",
            Predicate::Nilpotent => "nilpotent",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Predicate> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown predicate '{s}'")))
    }
}

/// Flags of V, found by checking one element per line (all four predicates
/// are invariant under nonzero scaling, and the zero matrix satisfies them all).
pub fn spectral_classify(v: &MatrixSubspace) -> Result<SpectralFlags> {
    v.guard()?;
    let total = v.cardinality() as u64;
    let flags = (1..total)
        .into_par_iter()
        .filter_map(|i| {
            let c = v.coords_of_index(i);
            let lead = c.iter().find(|x| !x.is_zero()).copied();
            (lead == Some(Elem::ONE)).then(|| matrix_flags(&v.combine(&c)))
        })
        .reduce(|| MatrixFlags::ALL, MatrixFlags::and);
    Ok(flags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::linalg::Matrix;

    #[test]
    fn scaling_shortcut_matches_full_scan() {
        let f = FieldSpec::gf(3).unwrap();
        let v = MatrixSubspace::span(
            &f,
            2,
            &[
                Matrix::from_ints(&f, [[1, 1], [0, 1]]),
                Matrix::from_ints(&f, [[0, 0], [1, 2]]),
            ],
        )
        .unwrap();
        let full = v
            .elements()
            .unwrap()
            .map(|m| matrix_flags(&m))
            .fold(MatrixFlags::ALL, MatrixFlags::and);
        assert_eq!(spectral_classify(&v).unwrap(), full);
    }

    #[test]
    fn predicate_names_round_trip() {
        for p in Predicate::ALL {
            assert_eq!(p.name().parse::<Predicate>().unwrap(), p);
        }
        assert!("two_spec".parse::<Predicate>().is_err());
    }
}
