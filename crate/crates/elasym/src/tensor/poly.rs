//! Dense homogeneous polynomials in (x, y, z).
//!
//! Monomials of degree `n` are stored in a fixed order: the exponent of `x`
//! decreases first, then the exponent of `y`. The monomial `x^a y^b z^c` sits
//! at index `i(i+1)/2 + c` where `i = n - a`.

use std::ops::{Add, Mul, Neg, Sub};

/// Number of monomials of degree `n` in three variables.
pub fn dim(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Position of `x^a y^b z^c` in the dense layout; `a` is implied by the
/// degree.
#[inline]
pub fn index(_a: usize, b: usize, c: usize) -> usize {
    let i = b + c;
    i * (i + 1) / 2 + c
}

/// Exponent triples of degree `n` in storage order.
pub fn exponents(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(dim(n));
    for i in 0..=n {
        for c in 0..=i {
            out.push([n - i, i - c, c]);
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for j in 0..k {
        r = r * (n - j) as u64 / (j + 1) as u64;
    }
    r
}

/// n! / (a! b! c!) with n = a + b + c.
pub fn multinomial(e: [usize; 3]) -> f64 {
    let n = e[0] + e[1] + e[2];
    (binomial(n, e[0]) * binomial(n - e[0], e[1])) as f64
}

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    deg: usize,
    coef: Vec<f64>,
}

impl Poly {
    pub fn zero(deg: usize) -> Self {
        Poly { deg, coef: vec![0.0; dim(deg)] }
    }

    /// Builds a polynomial from a coefficient list in storage order.
    pub fn from_coefficients(deg: usize, coef: Vec<f64>) -> Option<Self> {
        (coef.len() == dim(deg)).then_some(Poly { deg, coef })
    }

    pub fn monomial(e: [usize; 3], value: f64) -> Self {
        let mut p = Poly::zero(e[0] + e[1] + e[2]);
        p.coef[index(e[0], e[1], e[2])] = value;
        p
    }

    /// The linear form `v₁x + v₂y + v₃z`.
    pub fn linear(v: [f64; 3]) -> Self {
        Poly { deg: 1, coef: v.to_vec() }
    }

    /// `x² + y² + z²`.
    pub fn r2() -> Self {
        let mut p = Poly::zero(2);
        p.coef[index(2, 0, 0)] = 1.0;
        p.coef[index(0, 2, 0)] = 1.0;
        p.coef[index(0, 0, 2)] = 1.0;
        p
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coef
    }

    pub fn coefficients_mut(&mut self) -> &mut [f64] {
        &mut self.coef
    }

    pub fn coeff(&self, e: [usize; 3]) -> f64 {
        self.coef[index(e[0], e[1], e[2])]
    }

    pub fn scale(&self, s: f64) -> Self {
        Poly { deg: self.deg, coef: self.coef.iter().map(|c| c * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.coef.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Partial derivative along axis 0, 1 or 2. The derivative of a
    /// constant is the zero constant.
    pub fn diff(&self, axis: usize) -> Self {
        if self.deg == 0 {
            return Poly::zero(0);
        }
        let mut out = Poly::zero(self.deg - 1);
        for (k, e) in exponents(self.deg).into_iter().enumerate() {
            if e[axis] == 0 || self.coef[k] == 0.0 {
                continue;
            }
            let mut f = e;
            f[axis] -= 1;
            out.coef[index(f[0], f[1], f[2])] += e[axis] as f64 * self.coef[k];
        }
        out
    }

    pub fn gradient(&self) -> [Poly; 3] {
        [self.diff(0), self.diff(1), self.diff(2)]
    }

    pub fn laplacian(&self) -> Self {
        if self.deg < 2 {
            return Poly::zero(0);
        }
        let mut out = Poly::zero(self.deg - 2);
        for (k, e) in exponents(self.deg).into_iter().enumerate() {
            let c = self.coef[k];
            if c == 0.0 {
                continue;
            }
            for axis in 0..3 {
                if e[axis] >= 2 {
                    let mut f = e;
                    f[axis] -= 2;
                    out.coef[index(f[0], f[1], f[2])] += (e[axis] * (e[axis] - 1)) as f64 * c;
                }
            }
        }
        out
    }

    pub fn eval(&self, p: [f64; 3]) -> f64 {
        exponents(self.deg)
            .into_iter()
            .zip(&self.coef)
            .map(|(e, c)| c * p[0].powi(e[0] as i32) * p[1].powi(e[1] as i32) * p[2].powi(e[2] as i32))
            .sum()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Poly::monomial([0, 0, 0], 1.0);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `p(Mx)` for a 3×3 matrix `M` given row by row.
    pub fn substitute(&self, m: [[f64; 3]; 3]) -> Self {
        let forms = [Poly::linear(m[0]), Poly::linear(m[1]), Poly::linear(m[2])];
        let pows: Vec<Vec<Poly>> = forms
            .iter()
            .map(|f| {
                let mut v = vec![Poly::monomial([0, 0, 0], 1.0)];
                for k in 1..=self.deg {
                    let next = &v[k - 1] * f;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(self.deg);
        for (k, e) in exponents(self.deg).into_iter().enumerate() {
            let c = self.coef[k];
            if c == 0.0 {
                continue;
            }
            let term = &(&pows[0][e[0]] * &pows[1][e[1]]) * &pows[2][e[2]];
            for (o, t) in out.coef.iter_mut().zip(&term.coef) {
                *o += c * t;
            }
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.deg + rhs.deg);
        let el = exponents(self.deg);
        let er = exponents(rhs.deg);
        for (i, a) in el.iter().enumerate() {
            let ca = self.coef[i];
            if ca == 0.0 {
                continue;
            }
            for (j, b) in er.iter().enumerate() {
                let cb = rhs.coef[j];
                if cb == 0.0 {
                    continue;
                }
                out.coef[index(a[0] + b[0], a[1] + b[1], a[2] + b[2])] += ca * cb;
            }
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.deg, rhs.deg, "adding polynomials of different degrees");
        Poly { deg: self.deg, coef: self.coef.iter().zip(&rhs.coef).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.deg, rhs.deg, "subtracting polynomials of different degrees");
        Poly { deg: self.deg, coef: self.coef.iter().zip(&rhs.coef).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_matches_enumeration() {
        for n in 0..10 {
            for (k, e) in exponents(n).into_iter().enumerate() {
                assert_eq!(index(e[0], e[1], e[2]), k);
            }
        }
    }

    #[test]
    fn laplacian_of_r4() {
        // Δ r⁴ = 20 r²
        let r4 = Poly::r2().pow(2);
        assert_eq!(r4.laplacian(), Poly::r2().scale(20.0));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial([2, 2, 0]), 6.0);
        assert_eq!(multinomial([1, 1, 1]), 6.0);
        assert_eq!(multinomial([4, 0, 0]), 1.0);
    }
}
