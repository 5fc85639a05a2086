//! Symmetry class of an elasticity tensor from its harmonic components.

use nalgebra::Matrix3;

use super::decomp::ElasticityTensor;
use crate::error::{check_tol, Result};
use crate::h4::classify::{cross_h, tr_cross_h, H4Class};
use crate::h4::covariants::H4Map;
use crate::sym2::{classify_family, FamilyClass};
use crate::tensor::ops::{cross2, deviator_matrix, sym_part};
use crate::tensor::HarmTensor;

/// One vanishing test of the cascade.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
}

impl Check {
    pub fn vanishes(&self) -> bool {
        self.residual <= self.threshold
    }
}

/// The decided class together with every test that was evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: H4Class,
    pub checks: Vec<Check>,
    /// Class of the family tests that were reached, by family name.
    pub families: Vec<(String, FamilyClass)>,
}

pub fn classify_elasticity(e: &ElasticityTensor, tol: f64) -> Result<H4Class> {
    Ok(classify_elasticity_report(e, tol)?.class)
}

/// Scales `E` to unit norm, decomposes it and runs [`classify_parts`].
pub fn classify_elasticity_report(e: &ElasticityTensor, tol: f64) -> Result<Classification> {
    check_tol(tol)?;
    let n = e.norm();
    let scaled = if n > 0.0 { e.scale(1.0 / n) } else { e.clone() };
    let dec = scaled.decompose();
    classify_parts(&dec.h, &dec.a, &dec.b, tol)
}

fn unit(m: &Matrix3<f64>) -> Matrix3<f64> {
    let n = m.norm();
    if n == 0.0 {
        *m
    } else {
        m / n
    }
}

struct Ledger {
    checks: Vec<Check>,
    tol: f64,
}

impl Ledger {
    fn test(&mut self, name: impl Into<String>, residual: f64) -> bool {
        let c = Check { name: name.into(), residual, threshold: self.tol };
        let v = c.vanishes();
        self.checks.push(c);
        v
    }
}

/// The cascade on `(H, a, b)`, taken at the scale of a unit-norm
/// elasticity tensor: `H`, `a` or `b` below `tol` count as zero.
///
/// Nonzero factors are scaled to unit norm before they enter a product, so
/// each vanishing test compares a product of unit factors against `tol`.
pub fn classify_parts(h: &HarmTensor, a: &Matrix3<f64>, b: &Matrix3<f64>, tol: f64) -> Result<Classification> {
    check_tol(tol)?;
    let mut led = Ledger { checks: Vec::new(), tol };
    let mut families = Vec::new();
    let az = led.test("a = 0", a.norm());
    let bz = led.test("b = 0", b.norm());
    let hz = led.test("d2 = 0", h.norm());
    let done = |class, led: Ledger, families| Ok(Classification { class, checks: led.checks, families });
    if az && bz && hz {
        return done(H4Class::Isotropic, led, families);
    }

    let hu = if hz { HarmTensor::zero(4) } else { h.scale(1.0 / h.norm()) };
    let au = if az { Matrix3::zeros() } else { unit(&deviator_matrix(a)) };
    let bu = if bz { Matrix3::zeros() } else { unit(&deviator_matrix(b)) };
    let map = H4Map::new(hu.as_sym());
    let d2 = map.d2();
    let d2d = deviator_matrix(&d2);
    let d2z = led.test("d2' = 0", d2d.norm());
    if az && bz && d2z {
        return done(H4Class::Cubic, led, families);
    }
    let d2u = if d2z { Matrix3::zeros() } else { unit(&d2d) };

    let fi = classify_family(&[d2, au, bu], tol)?;
    families.push(("(d2, a, b)".to_string(), fi));
    if fi == FamilyClass::TransverselyIsotropic {
        let ts = [("d2", d2u), ("a", au), ("b", bu)];
        let mut cross_zero = true;
        let mut tr_zero = true;
        let mut pair_zero = true;
        for (name, t) in &ts {
            cross_zero &= led.test(format!("H x {name} = 0"), cross_h(&hu, t).norm());
        }
        if cross_zero {
            return done(H4Class::TransverselyIsotropic, led, families);
        }
        for (name, t) in &ts {
            tr_zero &= led.test(format!("tr(H x {name}) = 0"), tr_cross_h(&hu, t).norm());
        }
        if tr_zero {
            return done(H4Class::Tetragonal, led, families);
        }
        for (name, t) in &ts {
            let ht = unit(&map.apply(t));
            pair_zero &= led.test(format!("{name} x (H:{name}) = 0"), cross2(t, &ht).norm());
        }
        if pair_zero {
            return done(H4Class::Trigonal, led, families);
        }
    }

    let c3 = map.apply(&d2);
    let c4 = map.apply(&c3);
    let mut fo = vec![d2, au, bu, c3, c4, map.apply(&au), map.apply(&bu), map.apply(&(au * au)), map.apply(&(bu * bu))];
    let fo_class = classify_family(&fo, tol)?;
    families.push(("F_o".to_string(), fo_class));
    if fo_class == FamilyClass::Orthotropic {
        return done(H4Class::Orthotropic, led, families);
    }
    fo.push(map.apply(&sym_part(&(au * bu))));
    fo.push(map.apply(&sym_part(&(au * d2))));
    fo.push(map.apply(&sym_part(&(bu * d2))));
    let fm_class = classify_family(&fo, tol)?;
    families.push(("F_m".to_string(), fm_class));
    if fm_class == FamilyClass::Monoclinic {
        return done(H4Class::Monoclinic, led, families);
    }
    done(H4Class::Triclinic, led, families)
}
