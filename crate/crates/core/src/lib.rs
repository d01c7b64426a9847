//! Matrix subspaces with at most one eigenvalue over small finite fields.

pub mod catalog;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod reduce;
pub mod search;
pub mod subspace;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Elem, FieldSpec};
pub use linalg::{Matrix, Poly};
pub use subspace::MatrixSubspace;
