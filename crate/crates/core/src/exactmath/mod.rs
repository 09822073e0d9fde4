//! Exact arithmetic: integer polynomials, polynomials over prime fields,
//! finite fields `F_p[x]/(f)` and kernel dimensions of matrices over them.

pub mod arith;
mod field;
mod fppoly;
mod intpoly;
mod matrix;

pub use field::{field_inverse, FieldElement, FiniteField};
pub use fppoly::{factor_equal_degree, factor_equal_degree_seeded, PrimeFieldPolynomial};
pub(crate) use intpoly::render_poly_in;
pub use intpoly::{poly_mul_mod, IntPolynomial};
pub use matrix::{kernel_dimension, FieldMatrix};
