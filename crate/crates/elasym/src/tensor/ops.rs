//! The covariant operations on symmetric tensors, computed through their
//! polynomial counterparts.

use nalgebra::{Matrix3, Vector3};

use super::full::Tensor;
use super::poly::{self, Poly};
use super::sym::SymTensor;
use crate::error::{Error, Result};

/// Total symmetrization of a dense tensor.
pub fn symmetrize(t: &Tensor) -> SymTensor {
    t.symmetrize()
}

/// Symmetric tensor product `S¹ ⊙ S²`; its polynomial is the product of the
/// two polynomials.
pub fn sym_product(s1: &SymTensor, s2: &SymTensor) -> SymTensor {
    SymTensor::from_poly(&(&s1.to_poly() * &s2.to_poly()))
}

/// `r`-contraction of dense tensors: last `r` indices of `t1` against the
/// first `r` of `t2`.
pub fn contract_r(t1: &Tensor, t2: &Tensor, r: usize) -> Result<Tensor> {
    t1.contract(t2, r)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `(S¹ ⟨r⟩ S²)ˢ` from the derivative formula
/// `((p−r)!/p!)((q−r)!/q!) Σ r!/(k₁!k₂!k₃!) ∂ʳp₁/∂x^{k₁}∂y^{k₂}∂z^{k₃} ∂ʳp₂/(same)`.
pub fn sym_contract_r(s1: &SymTensor, s2: &SymTensor, r: usize) -> Result<SymTensor> {
    let (p, q) = (s1.order(), s2.order());
    if r > p || r > q {
        return Err(Error::ContractionRange { r, p, q });
    }
    let p1 = s1.to_poly();
    let p2 = s2.to_poly();
    let mut acc = Poly::zero(p + q - 2 * r);
    for k in poly::exponents(r) {
        let d1 = derivative(&p1, k);
        let d2 = derivative(&p2, k);
        let w = poly::multinomial(k);
        let prod = &d1 * &d2;
        for (a, b) in acc.coefficients_mut().iter_mut().zip(prod.coefficients()) {
            *a += w * b;
        }
    }
    let pref = factorial(p - r) / factorial(p) * factorial(q - r) / factorial(q);
    Ok(SymTensor::from_poly(&acc.scale(pref)))
}

fn derivative(p: &Poly, k: [usize; 3]) -> Poly {
    let mut d = p.clone();
    for (axis, &times) in k.iter().enumerate() {
        for _ in 0..times {
            d = d.diff(axis);
        }
    }
    d
}

/// Contracts every index of the lower-order tensor into the higher-order
/// one. The result is symmetric, so no symmetrization is lost.
pub fn contract_full(s1: &SymTensor, s2: &SymTensor) -> SymTensor {
    let r = s1.order().min(s2.order());
    sym_contract_r(s1, s2, r).expect("r is the smaller order")
}

/// Generalized cross product `S¹ × S²`, of order `p + q − 1`, from
/// `(1/pq) det(x, ∇p₁, ∇p₂)`.
pub fn cross(s1: &SymTensor, s2: &SymTensor) -> Result<SymTensor> {
    let (p, q) = (s1.order(), s2.order());
    if p == 0 || q == 0 {
        return Err(Error::OrderTooSmall { needed: 1, got: p.min(q) });
    }
    let g1 = s1.to_poly().gradient();
    let g2 = s2.to_poly().gradient();
    let x = [
        Poly::linear([1.0, 0.0, 0.0]),
        Poly::linear([0.0, 1.0, 0.0]),
        Poly::linear([0.0, 0.0, 1.0]),
    ];
    let mut acc = Poly::zero(p + q - 1);
    for (i, xi) in x.iter().enumerate() {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let minor = &(&g1[j] * &g2[k]) - &(&g1[k] * &g2[j]);
        let term = xi * &minor;
        acc = &acc + &term;
    }
    Ok(SymTensor::from_poly(&acc.scale(1.0 / (p * q) as f64)))
}

/// `tr S`, the contraction of any index pair.
pub fn trace(s: &SymTensor) -> Result<SymTensor> {
    let n = s.order();
    if n < 2 {
        return Err(Error::OrderTooSmall { needed: 2, got: n });
    }
    let lap = s.to_poly().laplacian();
    Ok(SymTensor::from_poly(&lap.scale(1.0 / (n * (n - 1)) as f64)))
}

/// `trʳ S`.
pub fn trace_power(s: &SymTensor, r: usize) -> Result<SymTensor> {
    let mut t = s.clone();
    for _ in 0..r {
        t = trace(&t)?;
    }
    Ok(t)
}

/// `a′ = a − (tr a / 3) q`.
pub fn deviator(a: &SymTensor) -> Result<SymTensor> {
    if a.order() != 2 {
        return Err(Error::WrongOrder { expected: 2, got: a.order() });
    }
    Ok(SymTensor::from_matrix(&deviator_matrix(&a.to_matrix())))
}

pub fn deviator_matrix(a: &Matrix3<f64>) -> Matrix3<f64> {
    a - Matrix3::identity() * (a.trace() / 3.0)
}

/// `ε : M`, the vector `ε_{ijk} M_{jk}`.
pub fn eps_contract(m: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(m[(1, 2)] - m[(2, 1)], m[(2, 0)] - m[(0, 2)], m[(0, 1)] - m[(1, 0)])
}

pub fn sym_part(m: &Matrix3<f64>) -> Matrix3<f64> {
    (m + m.transpose()) * 0.5
}

/// Cross product of two second-order symmetric tensors given as matrices.
pub fn cross2(a: &Matrix3<f64>, b: &Matrix3<f64>) -> SymTensor {
    cross(&SymTensor::from_matrix(a), &SymTensor::from_matrix(b)).expect("orders are positive")
}

/// Cross product computed from its index form
/// `(ε_{i₁jk} S¹_{j i₂…i_p} S²_{k i_{p+1}…})ˢ`. Slower; kept as an
/// independent path for checks.
pub fn cross_by_components(s1: &SymTensor, s2: &SymTensor) -> Result<SymTensor> {
    let (p, q) = (s1.order(), s2.order());
    if p == 0 || q == 0 {
        return Err(Error::OrderTooSmall { needed: 1, got: p.min(q) });
    }
    let eps = Tensor::levi_civita();
    let t1 = Tensor::from_sym(s1)?;
    let t2 = Tensor::from_sym(s2)?;
    // ε_{i j k} S¹_{j …}: contract j, giving (i, k, rest of S¹)
    let e1 = eps.permute(&[0, 2, 1]).contract(&t1, 1)?; // e1_{i k …} = ε_{i j k} S¹_{j …}
    // move k to the end, then contract with S²_{k …}
    let moved = e1.permute(&perm_for_move(e1.order()));
    let full = moved.contract(&t2, 1)?;
    Ok(full.symmetrize())
}

/// Permutation that moves slot 1 to the end.
fn perm_for_move(n: usize) -> Vec<usize> {
    // out_{i₀ i₁ … i_{n-1}} = e_{i₀ i_{n-1} i₁ … i_{n-2}}
    let mut p = vec![0, n - 1];
    p.extend(1..n - 1);
    p
}
