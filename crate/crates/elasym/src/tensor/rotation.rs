use nalgebra::{Matrix3, Unit, UnitQuaternion, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sym::SymTensor;
use crate::error::{Error, Result};

/// A proper rotation of R³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation(Matrix3<f64>);

impl Rotation {
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        let orth = (m.transpose() * m - Matrix3::identity()).abs().max();
        let det = (m.determinant() - 1.0).abs();
        let r = orth.max(det);
        if r > 1e-12 {
            return Err(Error::NotRotation(r));
        }
        Ok(Rotation(m))
    }

    pub fn identity() -> Self {
        Rotation(Matrix3::identity())
    }

    pub fn from_axis_angle(axis: Vector3<f64>, angle: f64) -> Self {
        let q = UnitQuaternion::from_axis_angle(&Unit::new_normalize(axis), angle);
        Rotation(q.to_rotation_matrix().into_inner())
    }

    /// Rotation of the unit quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Self {
        let q = UnitQuaternion::new_normalize(nalgebra::Quaternion::new(w, x, y, z));
        Rotation(q.to_rotation_matrix().into_inner())
    }

    /// Haar-distributed rotation drawn from `rng`, using the uniform
    /// unit-quaternion construction of Shoemake.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let u3: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
        let a = (1.0 - u1).sqrt();
        let b = u1.sqrt();
        Rotation::from_quaternion(a * u2.sin(), a * u2.cos(), b * u3.sin(), b * u3.cos())
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        Rotation(self.0.transpose())
    }

    pub fn compose(&self, other: &Rotation) -> Self {
        Rotation(self.0 * other.0)
    }
}

/// Deterministic Haar-random rotation for a given seed.
pub fn random_rotation(seed: u64) -> Rotation {
    Rotation::random(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// `(g ⋆ S)(x) = S(g⁻¹x)`.
pub fn rotate(g: &Rotation, s: &SymTensor) -> SymTensor {
    let gt = g.0.transpose();
    let m = [
        [gt[(0, 0)], gt[(0, 1)], gt[(0, 2)]],
        [gt[(1, 0)], gt[(1, 1)], gt[(1, 2)]],
        [gt[(2, 0)], gt[(2, 1)], gt[(2, 2)]],
    ];
    SymTensor::from_poly(&s.to_poly().substitute(m))
}
