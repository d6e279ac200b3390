//! Exact arithmetic over prime fields and dense matrices over them.

mod field;
mod gl;
mod matrix;

pub use field::{FieldElement, PrimeField, MAX_MODULUS};
pub use gl::{gl_order, GlOrderQuery, PrimePower};
pub use matrix::{Matrix, MatrixIter};
