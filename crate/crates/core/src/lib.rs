//! Exact computations with Ore-extension presentations and their
//! finite-dimensional representations.
//!
//! Everything here works over Q or a prime field GF(p) with exact
//! arithmetic; no floating point is involved anywhere. The crate is
//! `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod corpus;
pub mod extract;
pub mod lab;
pub mod matrix;
pub mod ore;
pub mod rep;
pub mod scalar;
pub mod subspace;
pub mod triangularize;
pub mod unipoly;

pub use matrix::{char_poly, row_reduce, LinalgError, Matrix, RowReduction, Vector};
pub use scalar::{field_arith, ArithOp, Field, FieldError, Scalar};
pub use subspace::{restrict_and_quotient, BlockDecomposition, SpanBuilder, Subspace};
pub use unipoly::{root_of_unity_order, univariate_roots, RootOfUnity, UniPoly};
