//! Random elasticity tensors of a prescribed symmetry class.

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::classify::classify_elasticity;
use super::decomp::{ElasticityTensor, HarmonicDecomposition};
use crate::error::{Error, Result};
use crate::h4::classify::{generate_normal_form_with, H4Class};
use crate::tensor::ops::deviator_matrix;
use crate::tensor::Rotation;

fn axial<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -2.0)) * rng.gen_range(-1.0..1.0)
}

fn random_sym<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<f64> {
    let m = Matrix3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    deviator_matrix(&((m + m.transpose()) * 0.5))
}

/// Deviators `a`, `b` sharing the symmetry of the normal form of `class`.
fn compatible_deviator<R: Rng + ?Sized>(class: H4Class, rng: &mut R) -> Matrix3<f64> {
    match class {
        H4Class::Isotropic | H4Class::Cubic => Matrix3::zeros(),
        H4Class::TransverselyIsotropic | H4Class::Trigonal | H4Class::Tetragonal => axial(rng),
        H4Class::Orthotropic => {
            deviator_matrix(&Matrix3::from_diagonal(&Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0))))
        }
        H4Class::Monoclinic => {
            let mut m = random_sym(rng);
            m[(0, 2)] = 0.0;
            m[(2, 0)] = 0.0;
            m[(1, 2)] = 0.0;
            m[(2, 1)] = 0.0;
            m
        }
        H4Class::Triclinic => random_sym(rng),
    }
}

const MAX_RETRIES: usize = 64;

/// A random harmonic decomposition in normal position whose tensor has
/// class `class`; draws are retried until the classifier agrees.
pub fn generate_decomposition<R: Rng + ?Sized>(class: H4Class, rng: &mut R) -> Result<HarmonicDecomposition> {
    for _ in 0..MAX_RETRIES {
        let h = generate_normal_form_with(class, rng)?.scale(rng.gen_range(0.5..1.5));
        let dec = HarmonicDecomposition {
            lambda: rng.gen_range(0.5..2.0),
            mu: rng.gen_range(0.5..2.0),
            a: compatible_deviator(class, rng),
            b: compatible_deviator(class, rng),
            h,
        };
        if classify_elasticity(&dec.reconstruct()?, crate::DEFAULT_TOL)? == class {
            return Ok(dec);
        }
    }
    Err(Error::Exhausted(MAX_RETRIES))
}

/// An elasticity tensor of class `class`, deterministic in `seed`, turned
/// by a random rotation when `rotate` is set.
pub fn generate_elasticity(class: H4Class, seed: u64, rotate: bool) -> Result<ElasticityTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = generate_decomposition(class, &mut rng)?.reconstruct()?;
    Ok(if rotate { e.rotate(&Rotation::random(&mut rng)) } else { e })
}
