//! Symmetric tensors on R³, their polynomial view, the covariant
//! operations `⊙`, `⟨r⟩` and `×`, harmonic decomposition and the rotation
//! action.

pub mod full;
pub mod harmonic;
pub mod ops;
pub mod poly;
pub mod rotation;
pub mod sym;

pub use full::Tensor;
pub use harmonic::{harmonic_decompose_sym, harmonic_part, harmonic_reconstruct};
pub use ops::{contract_full, contract_r, cross, deviator, sym_contract_r, sym_product, symmetrize, trace};
pub use poly::Poly;
pub use rotation::{random_rotation, rotate, Rotation};
pub use sym::{HarmTensor, SymTensor};

/// The Levi-Civita symbol as a dense tensor.
pub fn levi_civita() -> Tensor {
    Tensor::levi_civita()
}
