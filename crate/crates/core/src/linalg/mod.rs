//! Exact linear algebra: echelon forms, matrices, polynomials, characteristic polynomials.

pub mod charpoly;
pub mod echelon;
pub mod matrix;
pub mod poly;

pub use charpoly::{b2, char_poly, ck_coefficients, eigenvalues_in_k, single_eigenvalue_kbar, MatrixFlags};
pub use echelon::Echelon;
pub use matrix::Matrix;
pub use poly::{poly_power_factor, Poly};
