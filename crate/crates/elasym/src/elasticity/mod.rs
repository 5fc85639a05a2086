//! Elasticity tensors: Voigt and Kelvin views, harmonic decomposition,
//! symmetry classification and the integrity basis.

pub mod classify;
pub mod decomp;
pub mod fixtures;
pub mod invariants;
pub mod voigt;

pub use classify::{classify_elasticity, classify_elasticity_report, Check, Classification};
pub use decomp::{ElasticityTensor, HarmonicDecomposition};
pub use fixtures::generate_elasticity;
pub use invariants::{integrity_basis, IntegrityBasis297};
