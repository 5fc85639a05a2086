#![allow(dead_code)]

use elasym::tensor::{SymTensor, Tensor};
use elasym::HarmTensor;
use nalgebra::Matrix3;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_sym(rng: &mut impl Rng, order: usize) -> SymTensor {
    let n = (order + 1) * (order + 2) / 2;
    SymTensor::from_components(order, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

pub fn random_harm(rng: &mut impl Rng, order: usize) -> HarmTensor {
    HarmTensor::project(&random_sym(rng, order))
}

pub fn random_unit_h4(rng: &mut impl Rng) -> HarmTensor {
    let h = random_harm(rng, 4);
    h.scale(1.0 / h.norm())
}

pub fn random_full(rng: &mut impl Rng, order: usize) -> Tensor {
    Tensor::from_data(order, (0..3usize.pow(order as u32)).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

pub fn random_matrix(rng: &mut impl Rng) -> Matrix3<f64> {
    let m = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    (m + m.transpose()) * 0.5
}

pub fn random_deviator(rng: &mut impl Rng) -> Matrix3<f64> {
    elasym::tensor::ops::deviator_matrix(&random_matrix(rng))
}

pub fn rel(a: f64, scale: f64) -> f64 {
    a / scale.max(f64::MIN_POSITIVE)
}
