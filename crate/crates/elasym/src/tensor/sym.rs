use std::ops::{Add, Neg, Sub};

use nalgebra::{Matrix3, Vector3};

use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// Totally symmetric tensor of order `n` on R³.
///
/// Only one component per index multiset is stored. The component with `a`
/// indices equal to 1, `b` equal to 2 and `c` equal to 3 lives at the same
/// slot as the monomial `x^a y^b z^c` of [`Poly`].
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor {
    order: usize,
    comps: Vec<f64>,
}

fn counts(indices: &[usize]) -> [usize; 3] {
    let mut e = [0; 3];
    for &i in indices {
        e[i] += 1;
    }
    e
}

impl SymTensor {
    pub fn zero(order: usize) -> Self {
        SymTensor { order, comps: vec![0.0; poly::dim(order)] }
    }

    pub fn from_components(order: usize, comps: Vec<f64>) -> Result<Self> {
        let expected = poly::dim(order);
        if comps.len() != expected {
            return Err(Error::DegreeMismatch { degree: order, expected, got: comps.len() });
        }
        Ok(SymTensor { order, comps })
    }

    pub fn scalar(s: f64) -> Self {
        SymTensor { order: 0, comps: vec![s] }
    }

    pub fn vector(v: &Vector3<f64>) -> Self {
        SymTensor { order: 1, comps: vec![v[0], v[1], v[2]] }
    }

    /// Symmetric part of a 3×3 matrix.
    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        let mut s = SymTensor::zero(2);
        for i in 0..3 {
            for j in i..3 {
                s.set(&[i, j], 0.5 * (m[(i, j)] + m[(j, i)]));
            }
        }
        s
    }

    /// The Euclidean metric `q = δ`.
    pub fn metric() -> Self {
        SymTensor::from_matrix(&Matrix3::identity())
    }

    /// `q^{⊙k}`, whose polynomial is `(x² + y² + z²)^k`.
    pub fn metric_power(k: usize) -> Self {
        SymTensor::from_poly(&Poly::r2().pow(k))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn components(&self) -> &[f64] {
        &self.comps
    }

    /// Component at a full index list (0-based, any order).
    pub fn get(&self, indices: &[usize]) -> f64 {
        debug_assert_eq!(indices.len(), self.order);
        let e = counts(indices);
        self.comps[poly::index(e[0], e[1], e[2])]
    }

    pub fn set(&mut self, indices: &[usize], value: f64) {
        debug_assert_eq!(indices.len(), self.order);
        let e = counts(indices);
        self.comps[poly::index(e[0], e[1], e[2])] = value;
    }

    pub fn to_poly(&self) -> Poly {
        let coef = poly::exponents(self.order)
            .into_iter()
            .zip(&self.comps)
            .map(|(e, c)| poly::multinomial(e) * c)
            .collect();
        Poly::from_coefficients(self.order, coef).expect("layout is shared")
    }

    pub fn from_poly(p: &Poly) -> Self {
        let comps = poly::exponents(p.degree())
            .into_iter()
            .zip(p.coefficients())
            .map(|(e, c)| c / poly::multinomial(e))
            .collect();
        SymTensor { order: p.degree(), comps }
    }

    /// Inverse of [`SymTensor::to_poly`] from a raw coefficient list.
    pub fn from_poly_coefficients(degree: usize, coef: Vec<f64>) -> Result<Self> {
        let expected = poly::dim(degree);
        let got = coef.len();
        let p = Poly::from_coefficients(degree, coef).ok_or(Error::DegreeMismatch { degree, expected, got })?;
        Ok(SymTensor::from_poly(&p))
    }

    pub fn to_matrix(&self) -> Matrix3<f64> {
        assert_eq!(self.order, 2, "to_matrix needs a second-order tensor");
        Matrix3::from_fn(|i, j| self.get(&[i, j]))
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        assert_eq!(self.order, 1, "to_vector needs a first-order tensor");
        Vector3::new(self.comps[0], self.comps[1], self.comps[2])
    }

    pub fn to_scalar(&self) -> f64 {
        assert_eq!(self.order, 0, "to_scalar needs an order-0 tensor");
        self.comps[0]
    }

    /// Full contraction `S : T` (all indices).
    pub fn dot(&self, other: &SymTensor) -> f64 {
        assert_eq!(self.order, other.order);
        poly::exponents(self.order)
            .into_iter()
            .zip(self.comps.iter().zip(&other.comps))
            .map(|(e, (a, b))| poly::multinomial(e) * a * b)
            .sum()
    }

    /// Frobenius norm of the expanded tensor.
    pub fn norm(&self) -> f64 {
        self.dot(self).max(0.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        SymTensor { order: self.order, comps: self.comps.iter().map(|c| c * s).collect() }
    }

    /// Unit-norm copy, or the tensor itself when its norm is zero.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            self.scale(1.0 / n)
        } else {
            self.clone()
        }
    }
}

impl<'a> Add<&'a SymTensor> for &'a SymTensor {
    type Output = SymTensor;
    fn add(self, rhs: &SymTensor) -> SymTensor {
        assert_eq!(self.order, rhs.order, "adding tensors of different orders");
        SymTensor { order: self.order, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a SymTensor> for &'a SymTensor {
    type Output = SymTensor;
    fn sub(self, rhs: &SymTensor) -> SymTensor {
        assert_eq!(self.order, rhs.order, "subtracting tensors of different orders");
        SymTensor { order: self.order, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &SymTensor {
    type Output = SymTensor;
    fn neg(self) -> SymTensor {
        self.scale(-1.0)
    }
}

/// A symmetric tensor with vanishing trace.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmTensor(SymTensor);

impl HarmTensor {
    /// Accepts `s` if its trace is below `tol · max(1, ‖s‖)`.
    pub fn new(s: SymTensor, tol: f64) -> Result<Self> {
        let r = trace_residual(&s);
        if r > tol * s.norm().max(1.0) {
            return Err(Error::NotHarmonic(r));
        }
        Ok(HarmTensor(s))
    }

    /// Harmonic part of `s`.
    pub fn project(s: &SymTensor) -> Self {
        HarmTensor(super::harmonic::harmonic_part(s))
    }

    pub fn zero(order: usize) -> Self {
        HarmTensor(SymTensor::zero(order))
    }

    pub fn as_sym(&self) -> &SymTensor {
        &self.0
    }

    pub fn into_sym(self) -> SymTensor {
        self.0
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn scale(&self, s: f64) -> Self {
        HarmTensor(self.0.scale(s))
    }
}

/// Frobenius norm of `tr S`, zero for orders below two.
pub fn trace_residual(s: &SymTensor) -> f64 {
    if s.order() < 2 {
        return 0.0;
    }
    super::ops::trace(s).map(|t| t.norm()).unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_follow_polarization() {
        // p(x) = S(x, x, x, x): S₁₁₂₂ appears in 4!/(2!2!) = 6 orderings,
        // S₁₁₂₃ in 4!/(2!1!1!) = 12
        let mut s = SymTensor::zero(4);
        s.set(&[0, 0, 1, 1], 1.0);
        s.set(&[0, 0, 1, 2], 1.0);
        let p = s.to_poly();
        assert_eq!(p.coeff([2, 2, 0]), 6.0);
        assert_eq!(p.coeff([2, 1, 1]), 12.0);
        let x = [0.3, -1.1, 0.7];
        let mut direct = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        direct += s.get(&[i, j, k, l]) * x[i] * x[j] * x[k] * x[l];
                    }
                }
            }
        }
        assert!((p.eval(x) - direct).abs() < 1e-12);
    }

    #[test]
    fn metric_polynomial() {
        assert_eq!(SymTensor::metric().to_poly(), Poly::r2());
    }
}
