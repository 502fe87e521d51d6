//! Exact scalar fields and dense exact linear algebra.

mod elim;
mod field;
mod matrix;

pub use elim::{
    in_span, matrix_span_dim, nullspace, rank, row_echelon_basis, rref, solve, span_dim, Rref,
};
pub use field::{is_negative, is_prime, FieldSpec, Scalar, MAX_MODULUS};
pub use matrix::{mat_add, mat_mul, mat_sub, Matrix};
