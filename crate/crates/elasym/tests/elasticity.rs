mod common;

use common::*;
use elasym::elasticity::classify::classify_parts;
use elasym::elasticity::fixtures::generate_decomposition;
use elasym::elasticity::{classify_elasticity, classify_elasticity_report, generate_elasticity, ElasticityTensor, HarmonicDecomposition};
use elasym::h4::classify::cubic_tensor;
use elasym::h4::{normal_form, Harm4Params};
use elasym::tensor::random_rotation;
use elasym::H4Class;
use nalgebra::{Matrix3, Matrix6, Vector3};
use rand::Rng;

const TOL: f64 = 1e-8;

fn random_decomposition(r: &mut impl Rng) -> HarmonicDecomposition {
    HarmonicDecomposition {
        lambda: r.gen_range(-2.0..2.0),
        mu: r.gen_range(-2.0..2.0),
        a: random_deviator(r),
        b: random_deviator(r),
        h: random_harm(r, 4),
    }
}

fn random_voigt(r: &mut impl Rng) -> Matrix6<f64> {
    let m = Matrix6::from_fn(|_, _| r.gen_range(-1.0..1.0));
    m + m.transpose()
}

#[test]
fn voigt_kelvin_and_components() {
    let iso = HarmonicDecomposition::isotropic(1.0, 1.0).reconstruct().unwrap();
    let v = iso.to_voigt();
    for i in 0..3 {
        assert_eq!(v[(i, i)], 3.0);
        assert_eq!(v[(i + 3, i + 3)], 1.0);
        for j in 0..3 {
            if i != j {
                assert_eq!(v[(i, j)], 1.0);
            }
        }
    }
    let mut r = rng(40);
    let m = random_voigt(&mut r);
    let e = ElasticityTensor::from_voigt(&m).unwrap();
    assert_eq!(e.to_voigt(), m);
    let k = ElasticityTensor::from_kelvin(&e.to_kelvin()).unwrap();
    assert!((k.to_voigt() - m).norm() < 1e-14);
    let c = ElasticityTensor::from_components21(&e.to_components21()).unwrap();
    assert_eq!(c, e);
    assert_eq!(e.to_components21()[1], m[(0, 1)]);
    assert_eq!(e.to_components21()[6], m[(1, 1)]);
    assert!((e.norm() - e.full().norm()).abs() < 1e-13);
    let back = ElasticityTensor::from_full(&e.full()).unwrap();
    assert_eq!(back, e);
    let turned = e.rotate(&random_rotation(3)).to_voigt();
    assert_eq!(turned, turned.transpose());

    let mut bad = m;
    bad[(0, 1)] += 1e-3;
    assert!(ElasticityTensor::from_voigt(&bad).is_err());
    assert!(ElasticityTensor::from_components21(&[0.0; 20]).is_err());

    // Kelvin matrix of H with only X₁ set.
    let dec = HarmonicDecomposition { h: Harm4Params { x1: 1.0, ..Default::default() }.tensor(), ..HarmonicDecomposition::isotropic(0.0, 0.0) };
    let k = dec.reconstruct().unwrap().to_kelvin();
    assert!((k[(0, 3)] + 2f64.sqrt()).abs() < 1e-14);
}

#[test]
fn dilatation_and_voigt_tensors() {
    let mut r = rng(41);
    for _ in 0..20 {
        let (l, m) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let e = HarmonicDecomposition::isotropic(l, m).reconstruct().unwrap();
        let d = e.dilatation();
        let v = e.voigt_tensor();
        assert!((d - Matrix3::identity() * (3.0 * l + 2.0 * m)).norm() < 1e-14);
        assert!((v - Matrix3::identity() * (l + 4.0 * m)).norm() < 1e-14);
        assert!((d.trace() - 9.0 * l - 6.0 * m).abs() < 1e-13);
        assert!((v.trace() - 3.0 * l - 12.0 * m).abs() < 1e-13);
    }
    assert_eq!(ElasticityTensor::zero().dilatation(), Matrix3::zeros());
    assert_eq!(ElasticityTensor::zero().voigt_tensor(), Matrix3::zeros());

    let a = random_deviator(&mut r);
    let e = HarmonicDecomposition { a, ..HarmonicDecomposition::isotropic(0.0, 0.0) }.reconstruct().unwrap();
    assert!((e.dilatation() - a * 3.0).norm() < 1e-14);
    assert!((e.voigt_tensor() - a * 2.0).norm() < 1e-14);
    let b = random_deviator(&mut r);
    let e = HarmonicDecomposition { b, ..HarmonicDecomposition::isotropic(0.0, 0.0) }.reconstruct().unwrap();
    assert!((e.dilatation() - b * 4.0).norm() < 1e-14);
    assert!((e.voigt_tensor() - b * 5.0).norm() < 1e-14);
}

#[test]
fn decomposition_round_trips() {
    let mut r = rng(42);
    for _ in 0..500 {
        let e = ElasticityTensor::from_voigt(&random_voigt(&mut r)).unwrap();
        let dec = e.decompose();
        assert!(elasym::tensor::sym::trace_residual(dec.h.as_sym()) < 1e-12 * e.norm());
        assert!(dec.a.trace().abs() < 1e-14 && dec.b.trace().abs() < 1e-14);
        let back = dec.reconstruct().unwrap();
        assert!((back.to_kelvin() - e.to_kelvin()).norm() <= 1e-12 * e.norm());
    }
    for _ in 0..500 {
        let dec = random_decomposition(&mut r);
        let again = dec.reconstruct().unwrap().decompose();
        assert!((again.lambda - dec.lambda).abs() < 1e-13);
        assert!((again.mu - dec.mu).abs() < 1e-13);
        assert!((again.a - dec.a).norm() < 1e-13);
        assert!((again.b - dec.b).norm() < 1e-13);
        assert!((again.h.as_sym() - dec.h.as_sym()).norm() < 1e-13);
    }
    let iso = HarmonicDecomposition::isotropic(2.0, 3.0).reconstruct().unwrap().decompose();
    assert_eq!((iso.lambda, iso.mu), (2.0, 3.0));
    assert!(iso.a.norm() < 1e-15 && iso.b.norm() < 1e-15 && iso.h.norm() < 1e-14);

    let cubic = HarmonicDecomposition { h: cubic_tensor(), ..HarmonicDecomposition::isotropic(1.0, 1.0) };
    let back = cubic.reconstruct().unwrap().decompose();
    assert!((back.h.as_sym() - cubic_tensor().as_sym()).norm() < 1e-12);
}

#[test]
fn reconstruct_is_linear_and_checked() {
    let mut r = rng(43);
    let x = random_decomposition(&mut r);
    let y = random_decomposition(&mut r);
    let sum = HarmonicDecomposition {
        lambda: x.lambda + y.lambda,
        mu: x.mu + y.mu,
        a: x.a + y.a,
        b: x.b + y.b,
        h: elasym::HarmTensor::new(x.h.as_sym() + y.h.as_sym(), 1e-12).unwrap(),
    };
    let lhs = sum.reconstruct().unwrap();
    let rhs = x.reconstruct().unwrap().add(&y.reconstruct().unwrap());
    assert!((lhs.to_voigt() - rhs.to_voigt()).norm() < 1e-13);

    let bad = HarmonicDecomposition { a: Matrix3::identity(), ..HarmonicDecomposition::isotropic(1.0, 1.0) };
    assert!(bad.reconstruct().is_err());
}

#[test]
fn documented_classifications() {
    let iso = HarmonicDecomposition::isotropic(1.0, 1.0).reconstruct().unwrap();
    assert_eq!(classify_elasticity(&iso, TOL).unwrap(), H4Class::Isotropic);
    assert_eq!(classify_elasticity(&ElasticityTensor::zero(), TOL).unwrap(), H4Class::Isotropic);
    let cubic = HarmonicDecomposition { h: cubic_tensor(), ..HarmonicDecomposition::isotropic(1.0, 1.0) };
    assert_eq!(classify_elasticity(&cubic.reconstruct().unwrap(), TOL).unwrap(), H4Class::Cubic);
    assert!(classify_elasticity(&iso, 0.0).is_err());

    let ortho = HarmonicDecomposition {
        lambda: 1.0,
        mu: 1.0,
        a: Matrix3::from_diagonal(&Vector3::new(0.3, -0.1, -0.2)),
        b: Matrix3::from_diagonal(&Vector3::new(-0.4, 0.5, -0.1)),
        h: normal_form(H4Class::Orthotropic, &[1.0, 2.0, 4.0]).unwrap(),
    }
    .reconstruct()
    .unwrap();
    for seed in 0..100 {
        let e = ortho.rotate(&random_rotation(seed));
        let rep = classify_elasticity_report(&e, TOL).unwrap();
        assert_eq!(rep.class, H4Class::Orthotropic);
        assert!(rep.families.iter().any(|(n, c)| n == "F_o" && *c == elasym::sym2::FamilyClass::Orthotropic));
    }
}

#[test]
fn generated_fixtures_classify_under_rotation() {
    for class in H4Class::ALL {
        for seed in 0..5 {
            let e = generate_elasticity(class, seed, false).unwrap();
            assert_eq!(classify_elasticity(&e, TOL).unwrap(), class);
            for k in 0..20 {
                let g = random_rotation(10_000 + 100 * seed + k);
                assert_eq!(classify_elasticity(&e.rotate(&g), TOL).unwrap(), class, "{class} seed {seed}");
            }
            assert_eq!(classify_elasticity(&generate_elasticity(class, seed, true).unwrap(), TOL).unwrap(), class);
        }
    }
}

#[test]
fn dilatation_voigt_pair_gives_the_same_class() {
    let mut r = rng(44);
    for class in H4Class::ALL {
        for _ in 0..5 {
            let dec = generate_decomposition(class, &mut r).unwrap();
            let e = dec.reconstruct().unwrap();
            let n = e.norm();
            let s = e.scale(1.0 / n).decompose();
            let ab = classify_parts(&s.h, &s.a, &s.b, TOL).unwrap().class;
            let dv = classify_parts(&s.h, &s.d_prime(), &s.v_prime(), TOL).unwrap().class;
            assert_eq!(ab, class);
            assert_eq!(dv, class);
        }
    }
}

#[test]
fn dropping_deviators_never_refines_the_class() {
    let mut r = rng(45);
    for class in H4Class::ALL {
        for _ in 0..5 {
            let dec = generate_decomposition(class, &mut r).unwrap();
            let g = elasym::Rotation::random(&mut r);
            let full = classify_elasticity(&dec.reconstruct().unwrap().rotate(&g), TOL).unwrap();
            let bare = HarmonicDecomposition { a: Matrix3::zeros(), b: Matrix3::zeros(), ..dec.clone() };
            let coarse = classify_elasticity(&bare.reconstruct().unwrap().rotate(&g), TOL).unwrap();
            assert!(full.is_below(coarse), "{full} vs {coarse}");
        }
    }
}

#[test]
fn class_poset() {
    use H4Class::*;
    assert!(Triclinic.is_below(Cubic));
    assert!(Monoclinic.is_below(Trigonal));
    assert!(!Orthotropic.is_below(Trigonal));
    assert!(!Cubic.is_below(TransverselyIsotropic));
    assert!(Tetragonal.is_below(Cubic));
    for c in H4Class::ALL {
        assert!(c.is_below(c) && c.is_below(Isotropic));
        assert_eq!(c.as_str().parse::<H4Class>().unwrap(), c);
    }
}
