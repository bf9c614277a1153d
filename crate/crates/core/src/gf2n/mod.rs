//! Arithmetic in GF(2^n) for `n <= 64`, primitive-polynomial certification
//! and search, and the F2 matrices attached to a field polynomial.
//!
//! Bit `j` of every element or coefficient vector is the coefficient of
//! `alpha^j` (little-endian); the circuit and simulator modules use the same
//! convention for qubit `j`.

mod builtin;
mod dlog;
mod element;
mod matrix;
pub mod numtheory;
mod poly;

pub use builtin::{builtin_degrees, builtin_poly, default_poly};
pub use dlog::{discrete_log, DlogTable, DLOG_TABLE_CAP};
pub use element::{gf_mul, gf_pow, GFElement};
pub use matrix::{
    companion_decompose, companion_matrix, frobenius_matrix, matrix_order, BinMatrix,
    ORDER_ITERATION_CAP,
};
pub use numtheory::{mod_inverse, totient_check, TotientCheck};
pub use poly::{
    certify_primitive, find_primitive, group_order, BinaryPoly, FieldPoly, MAX_DEGREE, MIN_DEGREE,
};
