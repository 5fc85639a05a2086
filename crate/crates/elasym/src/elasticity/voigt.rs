//! 6×6 views of fourth-order tensors with minor and major symmetries.
//!
//! Index pairs are ordered (11, 22, 33, 23, 13, 12). The Voigt matrix holds
//! the components unscaled; the Kelvin matrix is `P M_V P` with
//! `P = diag(1, 1, 1, √2, √2, √2)`.

use nalgebra::Matrix6;

use crate::tensor::Tensor;

pub const PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

/// Position of the pair `(i, j)` in [`PAIRS`].
pub fn pair_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (1, 2) => 3,
        (0, 2) => 4,
        _ => 5,
    }
}

pub fn kelvin_weight(k: usize) -> f64 {
    if k < 3 {
        1.0
    } else {
        std::f64::consts::SQRT_2
    }
}

pub fn voigt_to_kelvin(m: &Matrix6<f64>) -> Matrix6<f64> {
    Matrix6::from_fn(|r, c| m[(r, c)] * kelvin_weight(r) * kelvin_weight(c))
}

pub fn kelvin_to_voigt(m: &Matrix6<f64>) -> Matrix6<f64> {
    Matrix6::from_fn(|r, c| m[(r, c)] / (kelvin_weight(r) * kelvin_weight(c)))
}

/// Dense fourth-order tensor `T_{ijkl} = M_V[(ij), (kl)]`.
pub fn voigt_to_full(m: &Matrix6<f64>) -> Tensor {
    let mut t = Tensor::zero(4).expect("order 4");
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    t.set(&[i, j, k, l], m[(pair_index(i, j), pair_index(k, l))]);
                }
            }
        }
    }
    t
}

/// Reads the Voigt matrix off a dense tensor assumed to have minor and
/// major symmetries.
pub fn full_to_voigt(t: &Tensor) -> Matrix6<f64> {
    Matrix6::from_fn(|r, c| {
        let (i, j) = PAIRS[r];
        let (k, l) = PAIRS[c];
        t.get(&[i, j, k, l])
    })
}

/// Largest entry of `|M − Mᵗ|`.
pub fn asymmetry(m: &Matrix6<f64>) -> f64 {
    (m - m.transpose()).abs().max()
}
