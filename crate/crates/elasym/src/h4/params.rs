use nalgebra::{Matrix3, Matrix6};

use crate::elasticity::voigt;
use crate::tensor::{HarmTensor, SymTensor};

/// Nine-parameter form of a fourth-order harmonic tensor, through its Kelvin
/// matrix `[[A, √2B], [√2Bᵗ, 2C]]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Harm4Params {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub x1: f64,
    pub x2: f64,
    pub y1: f64,
    pub y2: f64,
    pub z1: f64,
    pub z2: f64,
}

impl Harm4Params {
    pub fn from_array(v: [f64; 9]) -> Self {
        Harm4Params { l1: v[0], l2: v[1], l3: v[2], x1: v[3], x2: v[4], y1: v[5], y2: v[6], z1: v[7], z2: v[8] }
    }

    pub fn to_array(&self) -> [f64; 9] {
        [self.l1, self.l2, self.l3, self.x1, self.x2, self.y1, self.y2, self.z1, self.z2]
    }

    pub fn blocks(&self) -> (Matrix3<f64>, Matrix3<f64>, Matrix3<f64>) {
        let Harm4Params { l1, l2, l3, x1, x2, y1, y2, z1, z2 } = *self;
        #[rustfmt::skip]
        let a = Matrix3::new(
            l2 + l3, -l3, -l2,
            -l3, l3 + l1, -l1,
            -l2, -l1, l2 + l1,
        );
        #[rustfmt::skip]
        let b = Matrix3::new(
            -x1, y1 + y2, -z2,
            -x2, -y1, z1 + z2,
            x1 + x2, -y2, -z1,
        );
        #[rustfmt::skip]
        let c = Matrix3::new(
            -l1, -z1, -y1,
            -z1, -l2, -x1,
            -y1, -x1, -l3,
        );
        (a, b, c)
    }

    pub fn kelvin(&self) -> Matrix6<f64> {
        let (a, b, c) = self.blocks();
        let s2 = std::f64::consts::SQRT_2;
        let mut k = Matrix6::zeros();
        k.fixed_view_mut::<3, 3>(0, 0).copy_from(&a);
        k.fixed_view_mut::<3, 3>(0, 3).copy_from(&(b * s2));
        k.fixed_view_mut::<3, 3>(3, 0).copy_from(&(b.transpose() * s2));
        k.fixed_view_mut::<3, 3>(3, 3).copy_from(&(c * 2.0));
        k
    }

    /// The dense tensor read off the Kelvin matrix (not symmetrized).
    pub fn full(&self) -> crate::tensor::Tensor {
        voigt::voigt_to_full(&voigt::kelvin_to_voigt(&self.kelvin()))
    }

    pub fn tensor(&self) -> HarmTensor {
        HarmTensor::new(self.full().symmetrize(), 1e-12).expect("the parametrization is harmonic")
    }

    /// Reads the parameters back from a harmonic tensor.
    pub fn from_tensor(h: &HarmTensor) -> Self {
        let s: &SymTensor = h.as_sym();
        Harm4Params {
            l1: -s.get(&[1, 1, 2, 2]),
            l2: -s.get(&[0, 0, 2, 2]),
            l3: -s.get(&[0, 0, 1, 1]),
            x1: -s.get(&[0, 0, 1, 2]),
            x2: -s.get(&[1, 1, 1, 2]),
            y1: -s.get(&[1, 1, 0, 2]),
            y2: -s.get(&[2, 2, 0, 2]),
            z1: -s.get(&[2, 2, 0, 1]),
            z2: -s.get(&[0, 0, 0, 1]),
        }
    }
}
