//! Fourth-order harmonic tensors: parametrization, covariants and symmetry
//! classification.

pub mod classify;
pub mod covariants;
pub mod params;

pub use classify::{classify_h4, classify_pair_ht, generate_normal_form, normal_form, H4Class};
pub use covariants::{boehler, ck, cov_space_dims, d2, d3, eval_basis, BoehlerSet, CovariantBasisEntry};
pub use params::Harm4Params;
