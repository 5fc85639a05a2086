//! Dense tensors in index form, used where intermediate results are not
//! symmetric (matrix products, `Hⁿ = H : Hⁿ⁻¹`, single contractions).

use nalgebra::{Matrix3, Vector3};

use super::poly;
use super::sym::SymTensor;
use crate::error::{Error, Result};

/// Largest order stored densely (3⁹ entries).
pub const MAX_ORDER: usize = 9;

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    order: usize,
    data: Vec<f64>,
}

fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Decodes a flat position into its index list, first index most significant.
fn unflatten(mut pos: usize, order: usize, out: &mut [usize]) {
    for k in (0..order).rev() {
        out[k] = pos % 3;
        pos /= 3;
    }
}

impl Tensor {
    pub fn zero(order: usize) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        Ok(Tensor { order, data: vec![0.0; pow3(order)] })
    }

    pub fn from_data(order: usize, data: Vec<f64>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        if data.len() != pow3(order) {
            return Err(Error::DegreeMismatch { degree: order, expected: pow3(order), got: data.len() });
        }
        Ok(Tensor { order, data })
    }

    pub fn scalar(s: f64) -> Self {
        Tensor { order: 0, data: vec![s] }
    }

    pub fn from_vector(v: &Vector3<f64>) -> Self {
        Tensor { order: 1, data: vec![v[0], v[1], v[2]] }
    }

    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        let mut data = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                data.push(m[(i, j)]);
            }
        }
        Tensor { order: 2, data }
    }

    /// The Levi-Civita symbol, `ε₁₂₃ = 1`.
    pub fn levi_civita() -> Self {
        let mut t = Tensor { order: 3, data: vec![0.0; 27] };
        for (i, j, k, s) in [(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0), (0, 2, 1, -1.0), (2, 1, 0, -1.0), (1, 0, 2, -1.0)] {
            t.data[9 * i + 3 * j + k] = s;
        }
        t
    }

    /// Expands a symmetric tensor.
    pub fn from_sym(s: &SymTensor) -> Result<Self> {
        let n = s.order();
        let mut t = Tensor::zero(n)?;
        let mut idx = vec![0; n];
        for pos in 0..t.data.len() {
            unflatten(pos, n, &mut idx);
            t.data[pos] = s.get(&idx);
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[idx.iter().fold(0, |acc, &i| 3 * acc + i)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let p = idx.iter().fold(0, |acc, &i| 3 * acc + i);
        self.data[p] = v;
    }

    pub fn to_matrix(&self) -> Matrix3<f64> {
        assert_eq!(self.order, 2);
        Matrix3::from_fn(|i, j| self.data[3 * i + j])
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        assert_eq!(self.order, 1);
        Vector3::new(self.data[0], self.data[1], self.data[2])
    }

    pub fn to_scalar(&self) -> f64 {
        assert_eq!(self.order, 0);
        self.data[0]
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Tensor { order: self.order, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Tensor) -> Self {
        assert_eq!(self.order, other.order);
        Tensor { order: self.order, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    /// Total symmetrization: the average over all index permutations.
    ///
    /// Every arrangement of a given index multiset occurs equally often among
    /// the n! permutations, so averaging over arrangements is enough.
    pub fn symmetrize(&self) -> SymTensor {
        let n = self.order;
        let mut acc = vec![0.0; poly::dim(n)];
        let mut idx = vec![0; n];
        for (pos, v) in self.data.iter().enumerate() {
            unflatten(pos, n, &mut idx);
            let mut e = [0; 3];
            for &i in &idx {
                e[i] += 1;
            }
            acc[poly::index(e[0], e[1], e[2])] += v;
        }
        for (e, a) in poly::exponents(n).into_iter().zip(acc.iter_mut()) {
            *a /= poly::multinomial(e);
        }
        SymTensor::from_components(n, acc).expect("layout is shared")
    }

    /// Largest deviation from total symmetry.
    pub fn asymmetry(&self) -> f64 {
        let s = Tensor::from_sym(&self.symmetrize()).expect("same order");
        self.data.iter().zip(&s.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// `r`-contraction: the last `r` indices of `self` against the first `r`
    /// of `other`, in order.
    pub fn contract(&self, other: &Tensor, r: usize) -> Result<Tensor> {
        let (p, q) = (self.order, other.order);
        if r > p || r > q {
            return Err(Error::ContractionRange { r, p, q });
        }
        let outer_l = pow3(p - r);
        let outer_r = pow3(q - r);
        let inner = pow3(r);
        let mut out = Tensor::zero(p + q - 2 * r)?;
        for i in 0..outer_l {
            let row = &self.data[i * inner..(i + 1) * inner];
            for (k, &a) in row.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let col = &other.data[k * outer_r..(k + 1) * outer_r];
                let dst = &mut out.data[i * outer_r..(i + 1) * outer_r];
                for (d, b) in dst.iter_mut().zip(col) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Contraction of the index pair `(i, j)`, 0-based.
    pub fn trace_pair(&self, i: usize, j: usize) -> Result<Tensor> {
        let n = self.order;
        if n < 2 {
            return Err(Error::OrderTooSmall { needed: 2, got: n });
        }
        assert!(i < j && j < n, "invalid index pair");
        let mut out = Tensor::zero(n - 2)?;
        let mut idx = vec![0; n];
        let mut rest = Vec::with_capacity(n - 2);
        for (pos, v) in self.data.iter().enumerate() {
            unflatten(pos, n, &mut idx);
            if idx[i] != idx[j] {
                continue;
            }
            rest.clear();
            rest.extend(idx.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &x)| x));
            let p = rest.iter().fold(0, |acc, &x| 3 * acc + x);
            out.data[p] += v;
        }
        Ok(out)
    }

    /// Tensor with indices permuted: `out[idx] = self[idx ∘ perm]`, that is
    /// `out_{i₀…} = self_{i_{perm[0]}…}`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut out = Tensor { order: n, data: vec![0.0; self.data.len()] };
        let mut idx = vec![0; n];
        let mut src = vec![0; n];
        for pos in 0..self.data.len() {
            unflatten(pos, n, &mut idx);
            for k in 0..n {
                src[k] = idx[perm[k]];
            }
            out.data[pos] = self.get(&src);
        }
        out
    }

    /// `(g ⋆ T)_{i…} = g_{i j} ⋯ T_{j…}`.
    pub fn rotate(&self, g: &Matrix3<f64>) -> Tensor {
        let mut cur = self.clone();
        let n = self.order;
        let gt = Tensor::from_matrix(g);
        // contract g into the leading index, then cycle that index to the
        // back; after n rounds every slot has been transformed once
        for _ in 0..n {
            let c = gt.contract(&cur, 1).expect("order preserved");
            cur = c.permute(&perm_to_back(n));
        }
        cur
    }
}

/// Permutation moving index 0 to the last slot.
fn perm_to_back(n: usize) -> Vec<usize> {
    // out_{i₀ … i_{n-1}} = c_{i_{n-1} i₀ … i_{n-2}}
    let mut p = vec![n - 1];
    p.extend(0..n - 1);
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_product_is_one_contraction() {
        let a = Matrix3::new(1.0, 2.0, 0.5, -1.0, 0.0, 3.0, 2.0, 1.0, 1.0);
        let b = Matrix3::new(0.0, 1.0, 4.0, 2.0, -2.0, 1.0, 1.0, 0.0, 3.0);
        let c = Tensor::from_matrix(&a).contract(&Tensor::from_matrix(&b), 1).unwrap();
        assert!((c.to_matrix() - a * b).norm() < 1e-14);
    }

    #[test]
    fn rotate_matrix_is_conjugation() {
        let g = nalgebra::Rotation3::from_euler_angles(0.3, -0.7, 1.1).into_inner();
        let a = Matrix3::new(1.0, 2.0, 0.5, -1.0, 0.0, 3.0, 2.0, 1.0, 1.0);
        let r = Tensor::from_matrix(&a).rotate(&g).to_matrix();
        assert!((r - g * a * g.transpose()).norm() < 1e-13);
    }

    #[test]
    fn symmetrize_two_permutations() {
        let mut t = Tensor::zero(2).unwrap();
        t.set(&[0, 1], 1.0);
        let s = t.symmetrize();
        assert_eq!(s.get(&[0, 1]), 0.5);
        assert_eq!(s.get(&[1, 0]), 0.5);
    }
}
