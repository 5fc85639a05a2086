//! Covariant tensor algebra on R³ and exact symmetry classification of
//! fourth-order harmonic tensors and 3D elasticity tensors.
//!
//! The symmetry class of a tensor is decided by checking that finitely many
//! polynomial covariants vanish: no eigenvalue problem is solved.

pub mod bridge;
pub mod elasticity;
pub mod error;
pub mod expr;
pub mod h4;
pub mod sym2;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use h4::classify::H4Class;
pub use tensor::{HarmTensor, Rotation, SymTensor};

/// Default tolerance for vanishing tests.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default relative singular-value threshold for covariant span dimensions.
pub const DEFAULT_RANK_TOL: f64 = 1e-7;
