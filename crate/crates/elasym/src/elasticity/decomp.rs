use nalgebra::{Matrix3, Matrix6};

use super::voigt::{self, PAIRS};
use crate::error::{Error, Result};
use crate::tensor::ops::deviator_matrix;
use crate::tensor::{sym_product, HarmTensor, Rotation, SymTensor, Tensor};

/// Fourth-order tensor with minor and major symmetries, stored as its Voigt
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ElasticityTensor {
    voigt: Matrix6<f64>,
}

fn check_symmetric(m: &Matrix6<f64>, rel: f64) -> Result<()> {
    let r = voigt::asymmetry(m);
    if r > rel * m.abs().max() {
        return Err(Error::Asymmetric(r));
    }
    Ok(())
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

impl ElasticityTensor {
    /// Stores the symmetric part, so that the Voigt matrix is exactly
    /// symmetric whatever the rounding of the computation that produced it.
    fn from_voigt_unchecked(m: Matrix6<f64>) -> Self {
        ElasticityTensor { voigt: (m + m.transpose()) * 0.5 }
    }

    pub fn zero() -> Self {
        ElasticityTensor { voigt: Matrix6::zeros() }
    }

    /// Rejects matrices with `|M − Mᵗ| > 1e-12·max|M|`; the symmetric part
    /// is stored.
    pub fn from_voigt(m: &Matrix6<f64>) -> Result<Self> {
        Self::from_voigt_tol(m, 1e-12)
    }

    /// As [`from_voigt`](Self::from_voigt) with a caller-chosen relative
    /// asymmetry tolerance.
    pub fn from_voigt_tol(m: &Matrix6<f64>, rel: f64) -> Result<Self> {
        check_symmetric(m, rel)?;
        Ok(Self::from_voigt_unchecked(*m))
    }

    pub fn from_kelvin(m: &Matrix6<f64>) -> Result<Self> {
        Self::from_voigt(&voigt::kelvin_to_voigt(m))
    }

    pub fn from_kelvin_tol(m: &Matrix6<f64>, rel: f64) -> Result<Self> {
        Self::from_voigt_tol(&voigt::kelvin_to_voigt(m), rel)
    }

    /// The upper triangle of the Voigt matrix, row by row.
    pub fn from_components21(c: &[f64]) -> Result<Self> {
        if c.len() != 21 {
            return Err(Error::DegreeMismatch { degree: 4, expected: 21, got: c.len() });
        }
        let mut m = Matrix6::zeros();
        let mut k = 0;
        for i in 0..6 {
            for j in i..6 {
                m[(i, j)] = c[k];
                m[(j, i)] = c[k];
                k += 1;
            }
        }
        Ok(ElasticityTensor { voigt: m })
    }

    pub fn to_components21(&self) -> Vec<f64> {
        (0..6).flat_map(|i| (i..6).map(move |j| (i, j))).map(|(i, j)| self.voigt[(i, j)]).collect()
    }

    /// Reads a dense tensor, rejecting minor or major asymmetry above
    /// `1e-12·‖T‖`.
    pub fn from_full(t: &Tensor) -> Result<Self> {
        if t.order() != 4 {
            return Err(Error::WrongOrder { expected: 4, got: t.order() });
        }
        let mut worst: f64 = 0.0;
        for idx in 0..81 {
            let (i, j, k, l) = (idx / 27, idx / 9 % 3, idx / 3 % 3, idx % 3);
            let v = t.get(&[i, j, k, l]);
            for w in [t.get(&[j, i, k, l]), t.get(&[i, j, l, k]), t.get(&[k, l, i, j])] {
                worst = worst.max((v - w).abs());
            }
        }
        if worst > 1e-12 * t.norm().max(f64::MIN_POSITIVE) {
            return Err(Error::Asymmetric(worst));
        }
        Ok(Self::from_voigt_unchecked(voigt::full_to_voigt(t)))
    }

    pub fn to_voigt(&self) -> Matrix6<f64> {
        self.voigt
    }

    pub fn to_kelvin(&self) -> Matrix6<f64> {
        voigt::voigt_to_kelvin(&self.voigt)
    }

    pub fn full(&self) -> Tensor {
        voigt::voigt_to_full(&self.voigt)
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.voigt[(voigt::pair_index(i, j), voigt::pair_index(k, l))]
    }

    /// Frobenius norm of the tensor, equal to that of the Kelvin matrix.
    pub fn norm(&self) -> f64 {
        self.to_kelvin().norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        ElasticityTensor { voigt: self.voigt * s }
    }

    pub fn add(&self, other: &ElasticityTensor) -> Self {
        ElasticityTensor { voigt: self.voigt + other.voigt }
    }

    /// `g ⋆ E`.
    pub fn rotate(&self, g: &Rotation) -> Self {
        Self::from_voigt_unchecked(voigt::full_to_voigt(&self.full().rotate(g.matrix())))
    }

    /// `d = tr₁₂ E`, `d_ij = E_kkij`.
    pub fn dilatation(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| (0..3).map(|k| self.get(k, k, i, j)).sum())
    }

    /// `v = tr₁₃ E`, `v_ij = E_kikj`.
    pub fn voigt_tensor(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| (0..3).map(|k| self.get(k, i, k, j)).sum())
    }

    /// Total symmetrization `S_ijkl = (E_ijkl + E_ikjl + E_iljk)/3`.
    pub fn sym_part(&self) -> SymTensor {
        self.full().symmetrize()
    }

    pub fn decompose(&self) -> HarmonicDecomposition {
        let d = self.dilatation();
        let v = self.voigt_tensor();
        let (trd, trv) = (d.trace(), v.trace());
        let dd = deviator_matrix(&d);
        let vd = deviator_matrix(&v);
        let q = SymTensor::metric();
        let s = self.sym_part();
        let h = &(&s - &sym_product(&q, &SymTensor::from_matrix(&(dd + vd * 2.0))).scale(2.0 / 7.0))
            - &sym_product(&q, &q).scale((trd + 2.0 * trv) / 15.0);
        HarmonicDecomposition {
            lambda: (2.0 * trd - trv) / 15.0,
            mu: (3.0 * trv - trd) / 30.0,
            a: (dd * 5.0 - vd * 4.0) / 7.0,
            b: (vd * 3.0 - dd * 2.0) / 7.0,
            h: HarmTensor::project(&h),
        }
    }
}

/// `E = (λ, μ, a, b, H)` with
/// `E_ijkl = λδ_ijδ_kl + μ(δ_ikδ_jl + δ_ilδ_jk) + δ_ij a_kl + δ_kl a_ij
///  + δ_ik b_jl + δ_jl b_ik + δ_il b_jk + δ_jk b_il + H_ijkl`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicDecomposition {
    pub lambda: f64,
    pub mu: f64,
    pub a: Matrix3<f64>,
    pub b: Matrix3<f64>,
    pub h: HarmTensor,
}

impl HarmonicDecomposition {
    /// Deviator of the dilatation tensor, `3a + 4b`.
    pub fn d_prime(&self) -> Matrix3<f64> {
        self.a * 3.0 + self.b * 4.0
    }

    /// Deviator of the Voigt tensor, `2a + 5b`.
    pub fn v_prime(&self) -> Matrix3<f64> {
        self.a * 2.0 + self.b * 5.0
    }

    pub fn isotropic(lambda: f64, mu: f64) -> Self {
        HarmonicDecomposition { lambda, mu, a: Matrix3::zeros(), b: Matrix3::zeros(), h: HarmTensor::zero(4) }
    }

    /// Rejects `a`, `b` with trace or asymmetry above `1e-10·max(1, ‖·‖)`.
    pub fn reconstruct(&self) -> Result<ElasticityTensor> {
        for m in [&self.a, &self.b] {
            let scale = m.norm().max(1.0);
            if m.trace().abs() > 1e-10 * scale {
                return Err(Error::NotTraceless(m.trace().abs()));
            }
            let asym = (m - m.transpose()).norm();
            if asym > 1e-10 * scale {
                return Err(Error::Asymmetric(asym));
            }
        }
        if self.h.order() != 4 {
            return Err(Error::WrongOrder { expected: 4, got: self.h.order() });
        }
        Ok(self.reconstruct_unchecked())
    }

    pub fn reconstruct_unchecked(&self) -> ElasticityTensor {
        let (a, b, h) = (&self.a, &self.b, self.h.as_sym());
        let m = Matrix6::from_fn(|r, c| {
            let (i, j) = PAIRS[r];
            let (k, l) = PAIRS[c];
            self.lambda * delta(i, j) * delta(k, l)
                + self.mu * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k))
                + delta(i, j) * a[(k, l)]
                + delta(k, l) * a[(i, j)]
                + delta(i, k) * b[(j, l)]
                + delta(j, l) * b[(i, k)]
                + delta(i, l) * b[(j, k)]
                + delta(j, k) * b[(i, l)]
                + h.get(&[i, j, k, l])
        });
        ElasticityTensor::from_voigt_unchecked(m)
    }
}
