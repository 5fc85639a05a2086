//! Covariants of a fourth-order harmonic tensor `H`.
//!
//! `Hⁿ := H : Hⁿ⁻¹`, `d₂ := tr₁₃ H²`, `d₃ := tr₁₃ H³` with
//! `(tr₁₃ A)_{ij} = A_{kikj}`, and `c_k := H^{k−2} : d₂`.

use std::collections::HashMap;
use std::sync::OnceLock;

use nalgebra::{DMatrix, Matrix3, SMatrix, Vector3};

use crate::error::{check_tol, Error, Result};
use crate::expr::{self, Def, Env};
use crate::tensor::{HarmTensor, SymTensor, Tensor};

type M9 = SMatrix<f64, 9, 9>;
type V9 = SMatrix<f64, 9, 1>;

/// `H` as a linear map on 3×3 matrices, `M[(3i+j, 3k+l)] = H_{ijkl}`.
#[derive(Clone, Debug)]
pub struct H4Map {
    m: M9,
}

fn vec9(a: &Matrix3<f64>) -> V9 {
    V9::from_fn(|r, _| a[(r / 3, r % 3)])
}

fn mat3(v: &V9) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| v[3 * i + j])
}

fn tr13(m: &M9) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| (0..3).map(|k| m[(3 * k + i, 3 * k + j)]).sum())
}

impl H4Map {
    pub fn new(h: &SymTensor) -> Self {
        assert_eq!(h.order(), 4, "fourth-order tensor expected");
        let m = M9::from_fn(|r, c| h.get(&[r / 3, r % 3, c / 3, c % 3]));
        H4Map { m }
    }

    /// `H : a`.
    pub fn apply(&self, a: &Matrix3<f64>) -> Matrix3<f64> {
        mat3(&(self.m * vec9(a)))
    }

    /// `Hᵏ : a`.
    pub fn apply_power(&self, k: usize, a: &Matrix3<f64>) -> Matrix3<f64> {
        let mut v = vec9(a);
        for _ in 0..k {
            v = self.m * v;
        }
        mat3(&v)
    }

    pub fn d2(&self) -> Matrix3<f64> {
        tr13(&(self.m * self.m))
    }

    pub fn d3(&self) -> Matrix3<f64> {
        tr13(&(self.m * self.m * self.m))
    }
}

pub fn d2(h: &HarmTensor) -> Matrix3<f64> {
    H4Map::new(h.as_sym()).d2()
}

pub fn d3(h: &HarmTensor) -> Matrix3<f64> {
    H4Map::new(h.as_sym()).d3()
}

/// `c_k = H^{k−2} : d₂` for `k ∈ {3, 4, 5}`.
pub fn ck(h: &HarmTensor, k: usize) -> Result<Matrix3<f64>> {
    if !(3..=5).contains(&k) {
        return Err(Error::Domain("c_k is defined here for k = 3, 4, 5"));
    }
    let map = H4Map::new(h.as_sym());
    Ok(map.apply_power(k - 2, &map.d2()))
}

/// The second-order covariants `d₂ … d₁₀` and the invariants `J_k = tr d_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoehlerSet {
    d: [Matrix3<f64>; 9],
}

impl BoehlerSet {
    /// `d_k` for `k ∈ 2..=10`.
    pub fn d(&self, k: usize) -> &Matrix3<f64> {
        &self.d[k - 2]
    }

    /// `J_k = tr d_k` for `k ∈ 2..=10`.
    pub fn j(&self, k: usize) -> f64 {
        self.d[k - 2].trace()
    }

    pub fn js(&self) -> [f64; 9] {
        std::array::from_fn(|i| self.d[i].trace())
    }
}

pub fn boehler(h: &HarmTensor) -> BoehlerSet {
    let map = H4Map::new(h.as_sym());
    let d2 = map.d2();
    let d3 = map.d3();
    let d22 = d2 * d2;
    let hd2 = map.apply(&d2);
    let d5 = d2 * hd2;
    BoehlerSet {
        d: [
            d2,
            d3,
            d22,
            d5,
            d22 * d2,
            d22 * hd2,
            d22 * map.apply_power(2, &d2),
            d22 * map.apply(&d22),
            d22 * map.apply_power(2, &d22),
        ],
    }
}

/// One generator of the covariant algebra of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct CovariantBasisEntry {
    pub index: usize,
    pub id: &'static str,
    pub degree: usize,
    pub order: usize,
    pub value: SymTensor,
}

/// Helper covariants referenced by the basis formulas.
pub const HELPERS: &[(&str, &str)] = &[
    ("d2", "tr13(H:H)"),
    ("d3", "tr13(H:H:H)"),
    ("c3", "H:d2"),
    ("c4", "H:H:d2"),
    ("c5", "H:H:H:d2"),
];

/// The minimal covariant basis: `(index, id, degree, order, formula)`.
pub const BASIS: &[(usize, &str, usize, usize, &str)] = &[
    (0, "q", 0, 2, "q"),
    (1, "I2", 2, 0, "tr(d2)"),
    (2, "I3", 3, 0, "tr(d3)"),
    (3, "I4", 4, 0, "tr(d2^2)"),
    (4, "I5", 5, 0, "tr(d2*d3)"),
    (5, "I6", 6, 0, "tr(d2^3)"),
    (6, "I7", 7, 0, "tr(d2^2*d3)"),
    (7, "I8", 8, 0, "tr(d2*d3^2)"),
    (8, "I9", 9, 0, "tr(d3^3)"),
    (9, "I10", 10, 0, "tr(d2^2*d3^2)"),
    (10, "v5", 5, 1, "eps(d2*c3)"),
    (11, "v6", 6, 1, "eps(d2*c4)"),
    (12, "v7a", 7, 1, "eps(d2^2*c3)"),
    (13, "v7b", 7, 1, "eps(c4*c3)"),
    (14, "v8a", 8, 1, "eps(d2*c3^2)"),
    (15, "v8b", 8, 1, "eps(d2^2*c4)"),
    (16, "v9a", 9, 1, "eps(d2*c4*c3)"),
    (17, "v9b", 9, 1, "eps(c3*d2*c4)"),
    (18, "v9c", 9, 1, "eps(d2*c3*c4)"),
    (19, "v10a", 10, 1, "eps(d2^2*c3^2)"),
    (20, "v10b", 10, 1, "eps(c3^2*c4)"),
    (21, "v11a", 11, 1, "eps(c3*c4^2)"),
    (22, "v11b", 11, 1, "eps(d2^2*c3*c4)"),
    (23, "v12", 12, 1, "eps(d2*c3^2*c4)"),
    (24, "d2", 2, 2, "d2"),
    (25, "c3", 3, 2, "c3"),
    (26, "c4", 4, 2, "c4"),
    (27, "d2^2", 4, 2, "d2^2"),
    (28, "c5", 5, 2, "c5"),
    (29, "(d2c3)s", 5, 2, "sym(d2*c3)"),
    (30, "(d2c4)s", 6, 2, "sym(d2*c4)"),
    (31, "c3^2", 6, 2, "c3^2"),
    (32, "(d2^2c3)s", 7, 2, "sym(d2^2*c3)"),
    (33, "(c4c3)s", 7, 2, "sym(c4*c3)"),
    (34, "(d2c3^2)s", 8, 2, "sym(d2*c3^2)"),
    (35, "c4^2", 8, 2, "c4^2"),
    (36, "(d2^2c5)s", 9, 2, "sym(d2^2*c5)"),
    (37, "tr(Hxd2)", 3, 3, "tr(H x d2)"),
    (38, "tr(Hxc3)", 4, 3, "tr(H x c3)"),
    (39, "d2xc3", 5, 3, "d2 x c3"),
    (40, "tr(Hxd2^2)", 5, 3, "tr(H x d2^2)"),
    (41, "d2xd2^2", 6, 3, "d2 x d2^2"),
    (42, "d2xc4", 6, 3, "d2 x c4"),
    (43, "tr(Hxc5)", 6, 3, "tr(H x c5)"),
    (44, "d2^2xc3", 7, 3, "d2^2 x c3"),
    (45, "c3xc4", 7, 3, "c3 x c4"),
    (46, "d2xc5", 7, 3, "d2 x c5"),
    (47, "d2xc3^2", 8, 3, "d2 x c3^2"),
    (48, "c3xc5", 8, 3, "c3 x c5"),
    (49, "H", 1, 4, "H"),
    (50, "(H^2)s", 2, 4, "sym(H:H)"),
    (51, "(H^3)s", 3, 4, "sym(H:H:H)"),
    (52, "(H^4)s", 4, 4, "sym(H:H:H:H)"),
    (53, "(H.d2^2)s", 5, 4, "sym(H.d2^2)"),
    (54, "(H^2.d2^2)s", 6, 4, "sym(H:H.d2^2)"),
    (55, "Hxd2", 3, 5, "H x d2"),
    (56, "Hxc3", 4, 5, "H x c3"),
    (57, "(H^2)sxd2", 4, 5, "sym(H:H) x d2"),
    (58, "Hxd2^2", 5, 5, "H x d2^2"),
    (59, "Hxc4", 5, 5, "H x c4"),
    (60, "(H^2)sxc3", 5, 5, "sym(H:H) x c3"),
    (61, "Hxc5", 6, 5, "H x c5"),
    (62, "(H.H)s", 2, 6, "sym(H.H)"),
    (63, "(H^2.H)s", 3, 6, "sym(H:H.H)"),
    (64, "(H^2.H^2)s", 4, 6, "sym(H:H.(H:H))"),
    (65, "Hx(H^2)s", 3, 7, "H x sym(H:H)"),
    (66, "Hx(H^3)s", 4, 7, "H x sym(H:H:H)"),
    (67, "(H^2)sx(H^3)s", 5, 7, "sym(H:H) x sym(H:H:H)"),
    (68, "(H.H)sxH", 3, 9, "sym(H.H) x H"),
    (69, "(H.H)sx(H^2)s", 4, 9, "sym(H.H) x sym(H:H)"),
];

struct Compiled {
    helpers: Vec<Def>,
    basis: Vec<Def>,
}

fn compiled() -> &'static Compiled {
    static C: OnceLock<Compiled> = OnceLock::new();
    C.get_or_init(|| {
        let helpers = expr::compile(HELPERS).expect("helper formulas parse");
        let pairs: Vec<(String, &str)> = BASIS.iter().map(|e| (format!("#{}", e.0), e.4)).collect();
        let refs: Vec<(&str, &str)> = pairs.iter().map(|(n, s)| (n.as_str(), *s)).collect();
        let basis = expr::compile(&refs).expect("basis formulas parse");
        Compiled { helpers, basis }
    })
}

/// Environment holding `q`, `H` and the helper covariants.
pub fn base_env(h: &SymTensor) -> Result<Env> {
    let mut env: Env = HashMap::new();
    env.insert("q".into(), Tensor::from_matrix(&Matrix3::identity()));
    env.insert("H".into(), Tensor::from_sym(h)?);
    expr::run(&compiled().helpers, &mut env)?;
    Ok(env)
}

/// All 70 generators, `q` included, in table order.
pub fn eval_basis(h: &HarmTensor) -> Vec<CovariantBasisEntry> {
    let mut env = base_env(h.as_sym()).expect("order 4 fits");
    let values = expr::run(&compiled().basis, &mut env).expect("basis formulas evaluate");
    BASIS
        .iter()
        .zip(values)
        .map(|(&(index, id, degree, order, _), v)| {
            debug_assert_eq!(v.order(), order, "entry {id}");
            CovariantBasisEntry { index, id, degree, order, value: v.symmetrize() }
        })
        .collect()
}

/// Symmetric 3×3 matrix as an isometric 6-vector.
fn sym6(a: &Matrix3<f64>) -> [f64; 6] {
    let s = std::f64::consts::SQRT_2;
    [a[(0, 0)], a[(1, 1)], a[(2, 2)], s * a[(1, 2)], s * a[(0, 2)], s * a[(0, 1)]]
}

fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    let kept: Vec<&Vec<f64>> = rows.iter().filter(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt() > tol).collect();
    if kept.is_empty() {
        return 0;
    }
    let ncols = kept[0].len();
    let m = DMatrix::from_fn(kept.len(), ncols, |i, j| {
        let n = kept[i].iter().map(|x| x * x).sum::<f64>().sqrt();
        kept[i][j] / n
    });
    let sv = m.singular_values();
    let smax = sv.max();
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// `(dim Cov₁(H), dim Cov₂(H))` as numerical ranks of the evaluated
/// first-order generators, and of the second-order generators together with
/// `q` and the products `vᵢ ⊙ vⱼ`. `H` is scaled to unit norm and every
/// row to unit length; rows shorter than `tol` are dropped.
pub fn cov_space_dims(h: &HarmTensor, tol: f64) -> Result<(usize, usize)> {
    check_tol(tol)?;
    let n = h.norm();
    if n == 0.0 {
        return Ok((0, 1));
    }
    let basis = eval_basis(&h.scale(1.0 / n));
    let vs: Vec<Vector3<f64>> = basis.iter().filter(|e| e.order == 1).map(|e| e.value.to_vector()).collect();
    let rows1: Vec<Vec<f64>> = vs.iter().map(|v| v.iter().copied().collect()).collect();
    let mut rows2: Vec<Vec<f64>> = basis.iter().filter(|e| e.order == 2).map(|e| sym6(&e.value.to_matrix()).to_vec()).collect();
    for i in 0..vs.len() {
        for j in i..vs.len() {
            let p = vs[i] * vs[j].transpose();
            rows2.push(sym6(&((p + p.transpose()) * 0.5)).to_vec());
        }
    }
    Ok((rank(&rows1, tol), rank(&rows2, tol)))
}
