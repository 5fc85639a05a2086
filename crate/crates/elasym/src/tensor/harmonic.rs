//! Harmonic decomposition `S = H₀ + q ⊙ H₁ + ⋯ + q^{⊙r} ⊙ H_r`.
//!
//! Writing `p = h + r² t` with `Δh = 0` gives `Δp = Δ(r² t)`. The operator
//! `t ↦ c t + r² Δt` on degree-`m` polynomials is inverted by recursion on
//! the degree: applying `Δ` to `c t + r² Δt = f` gives the same equation
//! for `Δt` with `c` replaced by `c + 4m − 2`.

use super::poly::Poly;
use super::sym::SymTensor;

fn solve(c: f64, f: &Poly, m: usize) -> Poly {
    if m < 2 {
        return f.scale(1.0 / c);
    }
    let s = solve(c + 4.0 * m as f64 - 2.0, &f.laplacian(), m - 2);
    let r2s = &Poly::r2() * &s;
    (f - &r2s).scale(1.0 / c)
}

/// Splits `p` of degree `n ≥ 2` as `h + r² t` with `h` harmonic.
fn split(p: &Poly) -> (Poly, Poly) {
    let n = p.degree();
    let m = n - 2;
    let t = solve(6.0 + 4.0 * m as f64, &p.laplacian(), m);
    let h = p - &(&Poly::r2() * &t);
    (h, t)
}

/// `[H₀, H₁, …, H_r]` with `r = ⌊n/2⌋` and `H_k` harmonic of order `n − 2k`.
pub fn harmonic_decompose_sym(s: &SymTensor) -> Vec<SymTensor> {
    let mut out = Vec::new();
    let mut p = s.to_poly();
    while p.degree() >= 2 {
        let (h, t) = split(&p);
        out.push(SymTensor::from_poly(&h));
        p = t;
    }
    out.push(SymTensor::from_poly(&p));
    out
}

/// `H₀`, the harmonic part of `S`.
pub fn harmonic_part(s: &SymTensor) -> SymTensor {
    if s.order() < 2 {
        return s.clone();
    }
    SymTensor::from_poly(&split(&s.to_poly()).0)
}

/// `Σ q^{⊙k} ⊙ H_k`.
pub fn harmonic_reconstruct(parts: &[SymTensor]) -> SymTensor {
    let n = parts.first().map(|h| h.order()).unwrap_or(0);
    let mut acc = Poly::zero(n);
    for (k, h) in parts.iter().enumerate() {
        let term = &Poly::r2().pow(k) * &h.to_poly();
        acc = &acc + &term;
    }
    SymTensor::from_poly(&acc)
}
