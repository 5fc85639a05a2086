//! Binary forms, transvectants and the Cartan map, used as an independent
//! check of the tensor operations.
//!
//! A binary form of degree `d` is stored as `a₀ uᵈ + a₁ uᵈ⁻¹v + … + a_d vᵈ`.
//! The Cartan map is `φ(u, v) = ((u² + v²)/2, (u² − v²)/(2i), iuv)` and the
//! pullback of a harmonic polynomial `h` is `h ∘ φ`.

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tensor::ops::{cross, sym_contract_r, trace_power};
use crate::tensor::poly::exponents;
use crate::tensor::{HarmTensor, Rotation, SymTensor};

type C = Complex64;

const I: C = C::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<C>,
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|j| (n - j) as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

impl BinaryForm {
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeMismatch { degree: 0, expected: 1, got: 0 });
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| C::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![C::new(0.0, 0.0); degree + 1] }
    }

    pub fn constant(c: C) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    /// `α u + β v`.
    pub fn linear(alpha: C, beta: C) -> Self {
        BinaryForm { coeffs: vec![alpha, beta] }
    }

    /// `(α u + β v)ⁿ`.
    pub fn power_of_linear(alpha: C, beta: C, n: usize) -> Self {
        Self::linear(alpha, beta).pow(n)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `u^{d−k} v^k`.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs[k]
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C) -> Self {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &BinaryForm) -> Result<Self> {
        self.check_same_degree(other)?;
        Ok(BinaryForm { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<Self> {
        self.add(&other.scale(C::new(-1.0, 0.0)))
    }

    fn check_same_degree(&self, other: &BinaryForm) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                degree: self.degree(),
                expected: self.coeffs.len(),
                got: other.coeffs.len(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &BinaryForm) -> Self {
        let mut out = vec![C::new(0.0, 0.0); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: out }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::constant(C::new(1.0, 0.0));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, u: C, v: C) -> C {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * u.powu((d - k) as u32) * v.powu(k as u32))
            .sum()
    }

    /// `∂ᵅ_u ∂ᵝ_v f`; the zero form of degree 0 if `α + β` exceeds the degree.
    pub fn partial(&self, alpha: usize, beta: usize) -> Self {
        let d = self.degree();
        if alpha + beta > d {
            return Self::zero(0);
        }
        let out = (0..=d - alpha - beta)
            .map(|k| {
                // the term u^{d−alpha−beta−k} v^k comes from u^{d−(k+beta)} v^{k+beta}
                let src = k + beta;
                self.coeffs[src] * falling(d - src, alpha) * falling(src, beta)
            })
            .collect();
        BinaryForm { coeffs: out }
    }

    /// `f ∘ (ξ ↦ Mξ)`.
    pub fn substitute(&self, m: &Matrix2<C>) -> Self {
        let lu = Self::linear(m[(0, 0)], m[(0, 1)]);
        let lv = Self::linear(m[(1, 0)], m[(1, 1)]);
        let d = self.degree();
        let mut out = Self::zero(d);
        for (k, a) in self.coeffs.iter().enumerate() {
            let term = lu.pow(d - k).mul(&lv.pow(k)).scale(*a);
            for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
                *o += t;
            }
        }
        out
    }

    /// `(γ ⋆ f)(ξ) = f(γ⁻¹ξ)` for `γ ∈ SL(2, ℂ)`.
    pub fn act(&self, gamma: &Matrix2<C>) -> Result<Self> {
        let det = gamma.determinant();
        if (det - C::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(Error::Precondition("γ must have determinant one"));
        }
        // inverse of a unimodular 2×2 matrix
        let inv = Matrix2::new(gamma[(1, 1)], -gamma[(0, 1)], -gamma[(1, 0)], gamma[(0, 0)]);
        Ok(self.substitute(&inv))
    }

    /// `(Sf)(u, v) = f̄(−v, u)`.
    pub fn s_involution(&self) -> Self {
        let conj = BinaryForm { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() };
        let m = Matrix2::new(C::new(0.0, 0.0), C::new(-1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0));
        conj.substitute(&m)
    }

    /// `a_{d−k} = (−1)ᵏ ā_k` for all `k`, within `tol` relative to the
    /// largest coefficient. Only even degrees can be real forms.
    pub fn is_real_form(&self, tol: f64) -> bool {
        let d = self.degree();
        if d % 2 == 1 {
            return false;
        }
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        (0..=d).all(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (self.coeffs[d - k] - self.coeffs[k].conj() * sign).norm() <= tol * scale
        })
    }
}

/// Transvectant of index `r`,
/// `(n−r)!/n! (p−r)!/p! Σᵢ (−1)ⁱ C(r,i) ∂ʳf/∂u^{r−i}∂vⁱ ∂ʳg/∂uⁱ∂v^{r−i}`.
/// The zero form when `r > min(n, p)`.
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, r: usize) -> BinaryForm {
    let (n, p) = (f.degree(), g.degree());
    if r > n.min(p) {
        return BinaryForm::zero((n + p).saturating_sub(2 * r));
    }
    let pref = factorial(n - r) / factorial(n) * factorial(p - r) / factorial(p);
    let mut out = BinaryForm::zero(n + p - 2 * r);
    let mut binom = 1.0;
    for i in 0..=r {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let term = f.partial(r - i, i).mul(&g.partial(i, r - i));
        for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
            *o += t * (sign * binom * pref);
        }
        binom = binom * (r - i) as f64 / (i + 1) as f64;
    }
    out
}

/// `Δ(w) = b₁² − b₀b₂` for `w = b₀u² + b₁uv + b₂v²`.
pub fn discriminant(w: &BinaryForm) -> Result<C> {
    if w.degree() != 2 {
        return Err(Error::WrongOrder { expected: 2, got: w.degree() });
    }
    Ok(w.coeffs[1] * w.coeffs[1] - w.coeffs[0] * w.coeffs[2])
}

/// `φ*h` for any symmetric tensor. The Cartan cone lies in `x² + y² + z² = 0`,
/// so every multiple of `q` is mapped to zero.
pub fn cartan_pullback_unchecked(s: &SymTensor) -> BinaryForm {
    let n = s.order();
    let half = C::new(0.5, 0.0);
    let x = BinaryForm::new(vec![half, C::new(0.0, 0.0), half]).expect("nonempty");
    let y = BinaryForm::new(vec![-I * 0.5, C::new(0.0, 0.0), I * 0.5]).expect("nonempty");
    let z = BinaryForm::new(vec![C::new(0.0, 0.0), I, C::new(0.0, 0.0)]).expect("nonempty");
    let powers = |f: &BinaryForm| (0..=n).map(|k| f.pow(k)).collect::<Vec<_>>();
    let (xp, yp, zp) = (powers(&x), powers(&y), powers(&z));
    let poly = s.to_poly();
    let mut out = BinaryForm::zero(2 * n);
    for e in exponents(n) {
        let c = poly.coeff(e);
        if c == 0.0 {
            continue;
        }
        let term = xp[e[0]].mul(&yp[e[1]]).mul(&zp[e[2]]);
        for (o, t) in out.coeffs.iter_mut().zip(&term.coeffs) {
            *o += t * c;
        }
    }
    out
}

/// `φ*h`, the binary form of degree `2n` of a harmonic tensor of order `n`.
pub fn cartan_pullback(h: &HarmTensor) -> BinaryForm {
    cartan_pullback_unchecked(h.as_sym())
}

/// `κ(n, p, r) = 2^{−(2r+1)} (n+p−1)!(n−r−1)!(p−r−1)! / ((n+p−1−2r)!(n−1)!(p−1)!)`.
pub fn kappa(n: usize, p: usize, r: usize) -> Result<Ratio<i128>> {
    if n < r + 1 || p < r + 1 {
        return Err(Error::Domain("κ(n, p, r) needs n, p ≥ r + 1"));
    }
    if n + p > 30 {
        return Err(Error::Domain("κ(n, p, r) is evaluated for n + p ≤ 30"));
    }
    let fact = |k: usize| -> i128 { (1..=k as i128).product() };
    let num = fact(n + p - 1) * fact(n - r - 1) * fact(p - r - 1);
    let den = fact(n + p - 1 - 2 * r) * fact(n - 1) * fact(p - 1) * (1i128 << (2 * r + 1));
    Ok(Ratio::new(num, den))
}

/// Residual norms of the two translation identities
/// `⟨φ*H₁, φ*H₂⟩_{2r} = 2^{−r} φ*((H₁ ⟨r⟩ H₂)ˢ₀)` and
/// `⟨φ*H₁, φ*H₂⟩_{2r+1} = κ(n, p, r) φ*((trʳ(H₁ × H₂))₀)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TranslationResiduals {
    pub even: f64,
    /// `None` when `r + 1 > min(n, p)`, where `κ` is undefined.
    pub odd: Option<f64>,
    /// Norm of the left-hand sides, for relative comparisons.
    pub scale: f64,
}

pub fn verify_translation(h1: &HarmTensor, h2: &HarmTensor, r: usize) -> Result<TranslationResiduals> {
    let (n, p) = (h1.order(), h2.order());
    if r > n.min(p) {
        return Err(Error::ContractionRange { r, p: n, q: p });
    }
    let f = cartan_pullback(h1);
    let g = cartan_pullback(h2);
    let lhs_even = transvectant(&f, &g, 2 * r);
    let contracted = sym_contract_r(h1.as_sym(), h2.as_sym(), r)?;
    let rhs_even = cartan_pullback_unchecked(&contracted).scale(C::new(0.5f64.powi(r as i32), 0.0));
    let even = lhs_even.sub(&rhs_even)?.norm();
    let mut scale = lhs_even.norm();
    let odd = if r < n.min(p) {
        let lhs = transvectant(&f, &g, 2 * r + 1);
        let k = kappa(n, p, r)?;
        let k = *k.numer() as f64 / *k.denom() as f64;
        let t = trace_power(&cross(h1.as_sym(), h2.as_sym())?, r)?;
        let rhs = cartan_pullback_unchecked(&t).scale(C::new(k, 0.0));
        scale = scale.max(lhs.norm());
        Some(lhs.sub(&rhs)?.norm())
    } else {
        None
    };
    Ok(TranslationResiduals { even, odd, scale })
}

/// `[[iz, x+iy], [−x+iy, −iz]]`, the identification of `ℂ³` with `sl(2, ℂ)`.
pub fn sl2_matrix(x: [C; 3]) -> Matrix2<C> {
    let [x, y, z] = x;
    Matrix2::new(I * z, x + I * y, -x + I * y, -I * z)
}

fn sl2_coords(m: &Matrix2<C>) -> [C; 3] {
    let x = (m[(0, 1)] - m[(1, 0)]) * 0.5;
    let y = (m[(0, 1)] + m[(1, 0)]) / (I * 2.0);
    let z = -I * m[(0, 0)];
    [x, y, z]
}

/// `Ad_γ : M ↦ γMγ⁻¹` as a 3×3 complex matrix in the coordinates of
/// [`sl2_matrix`].
pub fn adjoint(gamma: &Matrix2<C>) -> Matrix3<C> {
    let inv = Matrix2::new(gamma[(1, 1)], -gamma[(0, 1)], -gamma[(1, 0)], gamma[(0, 0)]);
    let mut out = Matrix3::zeros();
    for j in 0..3 {
        let mut e = [C::new(0.0, 0.0); 3];
        e[j] = C::new(1.0, 0.0);
        let image = sl2_coords(&(gamma * sl2_matrix(e) * inv));
        for i in 0..3 {
            out[(i, j)] = image[i];
        }
    }
    out
}

/// `[[w + iz, x + iy], [−x + iy, w − iz]]` for a unit quaternion, chosen so
/// that its rotation agrees with [`Rotation::from_quaternion`].
pub fn su2_from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Matrix2<C> {
    let n = (w * w + x * x + y * y + z * z).sqrt();
    let (w, x, y, z) = (w / n, x / n, y / n, z / n);
    Matrix2::new(C::new(w, z), C::new(x, y), C::new(-x, y), C::new(w, -z))
}

pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<C> {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = q.iter().map(|c| c * c).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            return su2_from_quaternion(q[0], q[1], q[2], q[3]);
        }
    }
}

/// The rotation `π(γ) = Ad_γ` of an element of `SU(2)`.
pub fn su2_to_rotation(gamma: &Matrix2<C>) -> Result<Rotation> {
    let ad = adjoint(gamma);
    let imag = ad.map(|c| c.im.abs()).max();
    if imag > 1e-10 {
        return Err(Error::Precondition("γ is not in SU(2)"));
    }
    Rotation::new(ad.map(|c| c.re))
}
