//! Matrix rings over prime fields, the rank-metric codes their one-sided
//! ideals form, and the subspace codes obtained by lifting them.
//!
//! Everything is exact: field arithmetic on `u32` residues, weights as
//! rationals, and Gaussian coefficients in `u128`.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod io;
pub mod lifting;
pub mod rank_code;
pub mod ring;
pub mod subspace;
pub mod verify;
pub mod weights;

pub use algebra::{gl_order, FieldElement, GlOrderQuery, Matrix, PrimeField, PrimePower};
pub use error::{Error, Result};
pub use lifting::{lift, lift_code, lift_subspace, LiftedCode};
pub use rank_code::{rank_distance, RankMetricCode};
pub use ring::{MatrixRing, PrincipalIdeal, Side};
pub use subspace::{Subspace, SubspaceCode, SubspaceCodeParams};
pub use weights::{Rational, WeightFunction};
