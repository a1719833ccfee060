//! Pluriclosed Hermitian structures with parallel Bismut torsion (BKL
//! structures) on invariant models: metric Lie algebras carrying an
//! orthogonal complex structure.

// Checks are written `!(defect < tol)` so that a NaN defect fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod hermitian;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod roots;
pub mod standard;
pub mod tensor;

pub use error::{Error, Result};
