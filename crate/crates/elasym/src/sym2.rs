//! Symmetry classes of finite families of second-order symmetric tensors.

use std::fmt;

use nalgebra::{Matrix3, Vector3};

use crate::error::{check_tol, Error, Result};
use crate::tensor::ops::{cross2, deviator_matrix, eps_contract};

/// Class of a family `(a₁, …, aₙ)` of symmetric 3×3 tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyClass {
    Isotropic,
    TransverselyIsotropic,
    Orthotropic,
    Monoclinic,
    Triclinic,
}

impl FamilyClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyClass::Isotropic => "isotropic",
            FamilyClass::TransverselyIsotropic => "transversely-isotropic",
            FamilyClass::Orthotropic => "orthotropic",
            FamilyClass::Monoclinic => "monoclinic",
            FamilyClass::Triclinic => "triclinic",
        }
    }
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A non-empty list of symmetric 3×3 tensors.
#[derive(Clone, Debug, PartialEq)]
pub struct Sym2Family(Vec<Matrix3<f64>>);

impl Sym2Family {
    /// Rejects empty lists and members with `‖a − aᵗ‖ > 1e-12·‖a‖`.
    pub fn new(members: Vec<Matrix3<f64>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for a in &members {
            let r = (a - a.transpose()).norm();
            if r > 1e-12 * a.norm().max(1.0) {
                return Err(Error::Asymmetric(r));
            }
        }
        Ok(Sym2Family(members))
    }

    pub fn members(&self) -> &[Matrix3<f64>] {
        &self.0
    }

    pub fn classify(&self, tol: f64) -> Result<FamilyClass> {
        classify_family(&self.0, tol)
    }
}

fn mat_cross_norm(a: &Matrix3<f64>, b: &Matrix3<f64>) -> f64 {
    cross2(a, b).norm()
}

/// `tr(a × b) = (1/3) ε:(ab)`; zero iff `a` and `b` commute.
pub fn commutator_vector(a: &Matrix3<f64>, b: &Matrix3<f64>) -> Vector3<f64> {
    eps_contract(&(a * b)) / 3.0
}

/// `‖a × a²‖ > tol‖a‖³`, i.e. `a` has three distinct eigenvalues.
pub fn is_orthotropic_single(a: &Matrix3<f64>, tol: f64) -> bool {
    let n = a.norm();
    n > 0.0 && mat_cross_norm(a, &(a * a)) > tol * n * n * n
}

fn unit_deviators(family: &[Matrix3<f64>], tol: f64) -> Vec<Matrix3<f64>> {
    family
        .iter()
        .filter_map(|a| {
            let n = a.norm();
            if n == 0.0 {
                return None;
            }
            let d = deviator_matrix(&(a / n));
            let dn = d.norm();
            (dn > tol).then(|| d / dn)
        })
        .collect()
}

/// Decides the class of a family. Each member is scaled to unit norm; a
/// member is isotropic when its deviator is below `tol`, and the remaining
/// tests run on unit deviators, so every threshold is `tol`.
pub fn classify_family(family: &[Matrix3<f64>], tol: f64) -> Result<FamilyClass> {
    check_tol(tol)?;
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let devs = unit_deviators(family, tol);
    if devs.is_empty() {
        return Ok(FamilyClass::Isotropic);
    }

    let ti = devs.iter().any(|aj| {
        mat_cross_norm(aj, &(aj * aj)) <= tol && devs.iter().all(|ak| mat_cross_norm(aj, ak) <= tol)
    });
    if ti {
        return Ok(FamilyClass::TransverselyIsotropic);
    }

    let mut omega = Vector3::zeros();
    let mut commute = true;
    for (i, ai) in devs.iter().enumerate() {
        for aj in &devs[i + 1..] {
            let w = commutator_vector(ai, aj);
            if w.norm() > tol {
                commute = false;
                if w.norm() > omega.norm() {
                    omega = w;
                }
            }
        }
    }
    if commute {
        let single = devs.iter().any(|a| mat_cross_norm(a, &(a * a)) > tol);
        let pair = devs
            .iter()
            .enumerate()
            .any(|(i, ai)| devs[i + 1..].iter().any(|aj| mat_cross_norm(ai, aj) > tol));
        if single || pair {
            return Ok(FamilyClass::Orthotropic);
        }
    } else {
        let w = omega.normalize();
        if devs.iter().all(|a| (a * w).cross(&w).norm() <= tol) {
            return Ok(FamilyClass::Monoclinic);
        }
    }
    Ok(FamilyClass::Triclinic)
}

fn discriminant(d: &Matrix3<f64>) -> f64 {
    let t2 = (d * d).trace();
    let t3 = (d * d * d).trace();
    t2 * t2 * t2 - 6.0 * t3 * t3
}

/// An orthotropic tensor in the span of `a`, `b` and `q`.
///
/// Returns `a` or `b` when one of them is orthotropic. Otherwise the
/// deviators are orthonormalized to `ã`, `b̃` and `d(t) = tã + (1−t)b̃` is
/// returned for the first `t` in a fixed scan where
/// `(tr d²)³ − 6(tr d³)² ≠ 0`.
pub fn orthotropic_combination(a: &Matrix3<f64>, b: &Matrix3<f64>, tol: f64) -> Result<Matrix3<f64>> {
    check_tol(tol)?;
    if is_orthotropic_single(a, tol) {
        return Ok(*a);
    }
    if is_orthotropic_single(b, tol) {
        return Ok(*b);
    }
    if classify_family(&[*a, *b], tol)? == FamilyClass::TransverselyIsotropic
        || classify_family(&[*a, *b], tol)? == FamilyClass::Isotropic
    {
        return Err(Error::Precondition("the pair is at least transversely isotropic"));
    }
    let da = deviator_matrix(a);
    let at = da / da.norm();
    let db = deviator_matrix(b);
    let bo = db - at * at.dot(&db);
    let bt = bo / bo.norm();
    for t in [0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0] {
        let d = at * t + bt * (1.0 - t);
        let n2 = d.norm_squared();
        if discriminant(&d).abs() > tol * n2 * n2 * n2 {
            return Ok(d);
        }
    }
    Err(Error::Exhausted(9))
}
