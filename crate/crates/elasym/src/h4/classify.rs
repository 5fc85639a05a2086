//! Symmetry class of a fourth-order harmonic tensor, of a pair `(H, t)`, and
//! normal forms for each class.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::covariants::H4Map;
use super::params::Harm4Params;
use crate::error::{check_tol, Error, Result};
use crate::sym2::{classify_family, FamilyClass};
use crate::tensor::ops::{cross2, deviator_matrix, eps_contract};
use crate::tensor::{cross, rotate, trace, HarmTensor, Poly, Rotation, SymTensor};

/// The eight symmetry classes shared by `H⁴` and elasticity tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum H4Class {
    Isotropic,
    Cubic,
    TransverselyIsotropic,
    Trigonal,
    Tetragonal,
    Orthotropic,
    Monoclinic,
    Triclinic,
}

impl H4Class {
    pub const ALL: [H4Class; 8] = [
        H4Class::Isotropic,
        H4Class::Cubic,
        H4Class::TransverselyIsotropic,
        H4Class::Trigonal,
        H4Class::Tetragonal,
        H4Class::Orthotropic,
        H4Class::Monoclinic,
        H4Class::Triclinic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            H4Class::Isotropic => "isotropic",
            H4Class::Cubic => "cubic",
            H4Class::TransverselyIsotropic => "transversely-isotropic",
            H4Class::Trigonal => "trigonal",
            H4Class::Tetragonal => "tetragonal",
            H4Class::Orthotropic => "orthotropic",
            H4Class::Monoclinic => "monoclinic",
            H4Class::Triclinic => "triclinic",
        }
    }

    /// Conjugacy class of the symmetry group.
    pub fn group(self) -> &'static str {
        match self {
            H4Class::Isotropic => "SO(3)",
            H4Class::Cubic => "O",
            H4Class::TransverselyIsotropic => "O(2)",
            H4Class::Trigonal => "D3",
            H4Class::Tetragonal => "D4",
            H4Class::Orthotropic => "D2",
            H4Class::Monoclinic => "Z2",
            H4Class::Triclinic => "1",
        }
    }

    /// `[G_self] ⪯ [G_other]` in the poset of classes: the group of `self`
    /// is conjugate to a subgroup of the group of `other`.
    pub fn is_below(self, other: H4Class) -> bool {
        use H4Class::*;
        let up: &[H4Class] = match self {
            Triclinic => &H4Class::ALL,
            Monoclinic => &[Monoclinic, Orthotropic, Trigonal, Tetragonal, TransverselyIsotropic, Cubic, Isotropic],
            Orthotropic => &[Orthotropic, Tetragonal, TransverselyIsotropic, Cubic, Isotropic],
            Trigonal => &[Trigonal, TransverselyIsotropic, Cubic, Isotropic],
            Tetragonal => &[Tetragonal, TransverselyIsotropic, Cubic, Isotropic],
            TransverselyIsotropic => &[TransverselyIsotropic, Isotropic],
            Cubic => &[Cubic, Isotropic],
            Isotropic => &[Isotropic],
        };
        up.contains(&other)
    }

    /// Order of the symmetry group, `None` when infinite.
    pub fn group_order(self) -> Option<usize> {
        match self {
            H4Class::Isotropic | H4Class::TransverselyIsotropic => None,
            H4Class::Cubic => Some(24),
            H4Class::Trigonal => Some(6),
            H4Class::Tetragonal => Some(8),
            H4Class::Orthotropic => Some(4),
            H4Class::Monoclinic => Some(2),
            H4Class::Triclinic => Some(1),
        }
    }
}

impl fmt::Display for H4Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for H4Class {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        match key.as_str() {
            "isotropic" => Ok(H4Class::Isotropic),
            "cubic" => Ok(H4Class::Cubic),
            "transversely-isotropic" | "ti" => Ok(H4Class::TransverselyIsotropic),
            "trigonal" => Ok(H4Class::Trigonal),
            "tetragonal" => Ok(H4Class::Tetragonal),
            "orthotropic" => Ok(H4Class::Orthotropic),
            "monoclinic" => Ok(H4Class::Monoclinic),
            "triclinic" => Ok(H4Class::Triclinic),
            _ => Err(format!("unknown symmetry class {s:?}")),
        }
    }
}

fn unit(m: &Matrix3<f64>) -> Matrix3<f64> {
    let n = m.norm();
    if n == 0.0 {
        *m
    } else {
        m / n
    }
}

fn unit_dev(m: &Matrix3<f64>) -> Matrix3<f64> {
    unit(&deviator_matrix(m))
}

pub(crate) fn cross_h(h: &HarmTensor, t: &Matrix3<f64>) -> SymTensor {
    cross(h.as_sym(), &SymTensor::from_matrix(t)).expect("orders are positive")
}

/// `tr(H × t)`, of order three.
pub(crate) fn tr_cross_h(h: &HarmTensor, t: &Matrix3<f64>) -> SymTensor {
    trace(&cross_h(h, t)).expect("order 5")
}

/// Class of a harmonic fourth-order tensor.
///
/// `H` is isotropic when `‖H‖ ≤ tol`; otherwise it is scaled to unit norm
/// and each covariant factor entering a vanishing test is scaled to unit
/// norm as well, so every threshold is `tol`.
pub fn classify_h4(h: &HarmTensor, tol: f64) -> Result<H4Class> {
    check_tol(tol)?;
    if h.order() != 4 {
        return Err(Error::WrongOrder { expected: 4, got: h.order() });
    }
    let n = h.norm();
    if n <= tol {
        return Ok(H4Class::Isotropic);
    }
    let h = h.scale(1.0 / n);
    let map = H4Map::new(h.as_sym());
    let d2 = map.d2();
    let d2d = deviator_matrix(&d2);
    if d2d.norm() <= tol {
        return Ok(H4Class::Cubic);
    }
    let dh = unit(&d2d);
    let c3 = map.apply(&d2);
    let c4 = map.apply(&c3);

    if cross2(&dh, &(dh * dh)).norm() <= tol {
        if cross_h(&h, &dh).norm() <= tol {
            return Ok(H4Class::TransverselyIsotropic);
        }
        if tr_cross_h(&h, &dh).norm() <= tol {
            return Ok(H4Class::Tetragonal);
        }
        if cross2(&unit(&c3), &dh).norm() <= tol {
            return Ok(H4Class::Trigonal);
        }
    }

    let v5 = eps_contract(&(dh * unit_dev(&c3)));
    let v6 = eps_contract(&(dh * unit_dev(&c4)));
    if v5.norm() <= tol && v6.norm() <= tol && classify_family(&[d2, c3], tol)? == FamilyClass::Orthotropic {
        return Ok(H4Class::Orthotropic);
    }
    if classify_family(&[d2, c3, c4], tol)? == FamilyClass::Monoclinic {
        return Ok(H4Class::Monoclinic);
    }
    Ok(H4Class::Triclinic)
}

/// Accepts any symmetric fourth-order tensor and rejects it unless it is
/// harmonic within `tol`.
pub fn classify_sym4(s: &SymTensor, tol: f64) -> Result<H4Class> {
    check_tol(tol)?;
    classify_h4(&HarmTensor::new(s.clone(), tol)?, tol)
}

/// Joint class of `(H, t)` for a transversely isotropic `t`.
///
/// For cubic `H` the orientation of the axis of `t` against the cube decides
/// the class; otherwise the elasticity cascade is run on `H` with `a = t′`
/// and `b = 0`.
pub fn classify_pair_ht(h: &HarmTensor, t: &Matrix3<f64>, tol: f64) -> Result<H4Class> {
    check_tol(tol)?;
    if classify_family(&[*t], tol)? != FamilyClass::TransverselyIsotropic {
        return Err(Error::Precondition("t must be transversely isotropic"));
    }
    let th = unit_dev(t);
    if classify_h4(h, tol)? != H4Class::Cubic {
        let c = crate::elasticity::classify::classify_parts(h, &th, &Matrix3::zeros(), tol)?;
        return Ok(c.class);
    }
    let h = h.scale(1.0 / h.norm());
    let map = H4Map::new(h.as_sym());
    if tr_cross_h(&h, &th).norm() <= tol {
        return Ok(H4Class::Tetragonal);
    }
    let ht = unit(&map.apply(&th));
    let x = cross2(&th, &ht);
    if x.norm() <= tol {
        return Ok(H4Class::Trigonal);
    }
    let w = trace(&x)?.to_vector();
    if w.norm() <= tol {
        return Ok(H4Class::Orthotropic);
    }
    let w2 = trace(&cross2(&th, &(ht * ht)))?.to_vector();
    if w.normalize().cross(&w2).norm() <= tol * w2.norm().max(1.0) {
        return Ok(H4Class::Monoclinic);
    }
    Ok(H4Class::Triclinic)
}

/// `x⁴ + y⁴ + z⁴ − 3(x²y² + x²z² + y²z²)`, the cubic tensor with cube axes
/// along the coordinate axes.
pub fn cubic_tensor() -> HarmTensor {
    let mut p = Poly::zero(4);
    for (e, c) in [
        ([4, 0, 0], 1.0),
        ([0, 4, 0], 1.0),
        ([0, 0, 4], 1.0),
        ([2, 2, 0], -3.0),
        ([2, 0, 2], -3.0),
        ([0, 2, 2], -3.0),
    ] {
        p = &p + &Poly::monomial(e, c);
    }
    HarmTensor::new(SymTensor::from_poly(&p), 1e-12).expect("harmonic quartic")
}

/// Number of free parameters of [`normal_form`] for each class.
pub fn normal_form_arity(class: H4Class) -> usize {
    match class {
        H4Class::Isotropic => 0,
        H4Class::Cubic | H4Class::TransverselyIsotropic => 1,
        H4Class::Trigonal | H4Class::Tetragonal | H4Class::Orthotropic => 3,
        H4Class::Monoclinic => 5,
        H4Class::Triclinic => 9,
    }
}

/// Normal form of a class with symmetry axes along the coordinate frame
/// (principal axis `e₃`). Parameters:
///
/// - cubic: scale `s`
/// - transversely isotropic: `Λ₃` (with `Λ₁ = Λ₂ = −4Λ₃`)
/// - trigonal: `Λ₃, X₁, Y₁` (with `Λ₁ = Λ₂ = −4Λ₃`, `X₂ = −X₁`)
/// - tetragonal: `Λ₁ = Λ₂, Λ₃, Z₂`
/// - orthotropic: `Λ₁, Λ₂, Λ₃`
/// - monoclinic: `Λ₁, Λ₂, Λ₃, Z₁, Z₂`
/// - triclinic: all nine parameters
pub fn normal_form(class: H4Class, params: &[f64]) -> Result<HarmTensor> {
    if params.len() != normal_form_arity(class) {
        return Err(Error::Domain("wrong number of normal form parameters"));
    }
    let p = params;
    let hp = match class {
        H4Class::Isotropic => return Ok(HarmTensor::zero(4)),
        H4Class::Cubic => return Ok(cubic_tensor().scale(p[0])),
        H4Class::TransverselyIsotropic => Harm4Params { l1: -4.0 * p[0], l2: -4.0 * p[0], l3: p[0], ..Default::default() },
        H4Class::Trigonal => Harm4Params {
            l1: -4.0 * p[0],
            l2: -4.0 * p[0],
            l3: p[0],
            x1: p[1],
            x2: -p[1],
            y1: p[2],
            ..Default::default()
        },
        H4Class::Tetragonal => Harm4Params { l1: p[0], l2: p[0], l3: p[1], z2: p[2], ..Default::default() },
        H4Class::Orthotropic => Harm4Params { l1: p[0], l2: p[1], l3: p[2], ..Default::default() },
        H4Class::Monoclinic => Harm4Params { l1: p[0], l2: p[1], l3: p[2], z1: p[3], z2: p[4], ..Default::default() },
        H4Class::Triclinic => Harm4Params::from_array(p.try_into().expect("nine parameters")),
    };
    Ok(hp.tensor())
}

fn rot(axis: [f64; 3], angle: f64) -> Rotation {
    Rotation::from_axis_angle(Vector3::from(axis), angle)
}

const E1: [f64; 3] = [1.0, 0.0, 0.0];
const E3: [f64; 3] = [0.0, 0.0, 1.0];

/// Rotations leaving the normal form of `class` invariant, and rotations
/// from a strictly larger group that must not. For the trigonal and
/// tetragonal forms the two-fold axes depend on the parameters, so only the
/// three- and four-fold rotations are listed; `Z₃` and `Z₄` are not classes
/// of `H⁴`, so invariance under them already forces `D₃` and `D₄`.
pub fn symmetry_witnesses(class: H4Class) -> (Vec<Rotation>, Vec<Rotation>) {
    let generic = 0.7;
    match class {
        H4Class::Isotropic => (vec![rot(E1, generic), rot(E3, generic)], vec![]),
        H4Class::Cubic => (vec![rot(E3, FRAC_PI_2), rot(E1, FRAC_PI_2)], vec![rot(E3, generic)]),
        H4Class::TransverselyIsotropic => (vec![rot(E3, generic), rot(E1, PI)], vec![rot(E1, generic)]),
        H4Class::Tetragonal => (vec![rot(E3, FRAC_PI_2)], vec![rot(E3, generic), rot(E1, FRAC_PI_2)]),
        H4Class::Trigonal => (vec![rot(E3, 2.0 * PI / 3.0)], vec![rot(E3, generic)]),
        H4Class::Orthotropic => (
            vec![rot(E3, PI), rot(E1, PI)],
            vec![rot(E1, FRAC_PI_2), rot([0.0, 1.0, 0.0], FRAC_PI_2), rot(E3, FRAC_PI_2)],
        ),
        H4Class::Monoclinic => (vec![rot(E3, PI)], vec![rot(E1, PI), rot([0.0, 1.0, 0.0], PI)]),
        H4Class::Triclinic => (vec![], vec![rot(E1, PI), rot([0.0, 1.0, 0.0], PI), rot(E3, PI)]),
    }
}

fn invariance_residual(g: &Rotation, h: &HarmTensor) -> f64 {
    (&rotate(g, h.as_sym()) - h.as_sym()).norm() / h.norm().max(f64::MIN_POSITIVE)
}

/// Checks a normal form: invariant under the generators of its group, not
/// invariant under the supergroup witnesses, and classified as `class`.
pub fn validate_normal_form(class: H4Class, h: &HarmTensor) -> Result<bool> {
    let (gens, witnesses) = symmetry_witnesses(class);
    if class != H4Class::Isotropic && h.norm() == 0.0 {
        return Ok(false);
    }
    if gens.iter().any(|g| invariance_residual(g, h) > 1e-12) {
        return Ok(false);
    }
    if witnesses.iter().any(|g| invariance_residual(g, h) < 1e-3) {
        return Ok(false);
    }
    Ok(classify_h4(h, crate::DEFAULT_TOL)? == class)
}

const MAX_RETRIES: usize = 64;

/// A random normal form of `class`, scaled to unit norm (the zero tensor for
/// the isotropic class). Parameters are drawn from `seed`; draws that fail
/// [`validate_normal_form`] are discarded.
pub fn generate_normal_form(class: H4Class, seed: u64) -> Result<HarmTensor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate_normal_form_with(class, &mut rng)
}

pub fn generate_normal_form_with<R: Rng + ?Sized>(class: H4Class, rng: &mut R) -> Result<HarmTensor> {
    if class == H4Class::Isotropic {
        return Ok(HarmTensor::zero(4));
    }
    for _ in 0..MAX_RETRIES {
        let params: Vec<f64> = (0..normal_form_arity(class)).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let h = normal_form(class, &params)?;
        let n = h.norm();
        if n < 1e-3 {
            continue;
        }
        let h = h.scale(1.0 / n);
        if validate_normal_form(class, &h)? {
            return Ok(h);
        }
    }
    Err(Error::Exhausted(MAX_RETRIES))
}
