mod common;

use common::*;
use elasym::sym2::{
    classify_family, commutator_vector, is_orthotropic_single, orthotropic_combination, FamilyClass, Sym2Family,
};
use elasym::tensor::random_rotation;
use nalgebra::{Matrix3, Vector3};
use rand::Rng;

const TOL: f64 = 1e-8;

fn diag(a: f64, b: f64, c: f64) -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(a, b, c))
}

fn sym_e(i: usize, j: usize) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    m[(i, j)] += 1.0;
    m[(j, i)] += 1.0;
    m
}

fn fixtures() -> Vec<(Vec<Matrix3<f64>>, FamilyClass)> {
    vec![
        (vec![Matrix3::identity()], FamilyClass::Isotropic),
        (vec![Matrix3::identity(), Matrix3::identity() * 2.0], FamilyClass::Isotropic),
        (vec![diag(1.0, 1.0, 2.0)], FamilyClass::TransverselyIsotropic),
        (vec![diag(1.0, 1.0, 2.0), diag(3.0, 3.0, -1.0)], FamilyClass::TransverselyIsotropic),
        (vec![diag(1.0, 2.0, 3.0)], FamilyClass::Orthotropic),
        (vec![diag(1.0, 1.0, 2.0), diag(1.0, 2.0, 2.0)], FamilyClass::Orthotropic),
        (vec![diag(1.0, 2.0, 3.0), diag(-1.0, 0.5, 0.0), Matrix3::identity()], FamilyClass::Orthotropic),
        (vec![diag(1.0, 1.0, 2.0), sym_e(0, 2)], FamilyClass::Monoclinic),
        (vec![diag(1.0, 2.0, 3.0), sym_e(0, 1), diag(0.0, 1.0, 5.0)], FamilyClass::Monoclinic),
        (vec![diag(1.0, 2.0, 3.0), sym_e(0, 1), sym_e(1, 2)], FamilyClass::Triclinic),
        (vec![sym_e(0, 1) + diag(1.0, 0.0, 0.0), sym_e(1, 2) * 2.0 + diag(0.0, 0.0, 1.0)], FamilyClass::Triclinic),
    ]
}

#[test]
fn hand_constructed_families() {
    for (fam, class) in fixtures() {
        assert_eq!(classify_family(&fam, TOL).unwrap(), class, "{fam:?}");
        assert_eq!(Sym2Family::new(fam).unwrap().classify(TOL).unwrap(), class);
    }
    assert!(classify_family(&[], TOL).is_err());
    assert!(classify_family(&[Matrix3::identity()], 0.0).is_err());
    assert!(Sym2Family::new(vec![Matrix3::new(0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)]).is_err());
}

#[test]
fn monoclinic_axis_is_an_eigenvector() {
    let a = diag(1.0, 1.0, 2.0);
    let b = sym_e(0, 2);
    let w = commutator_vector(&a, &b);
    let direct = elasym::tensor::ops::eps_contract(&(a * b)) / 3.0;
    assert!((w - direct).norm() < 1e-15);
    assert!(w.x.abs() < 1e-15 && w.z.abs() < 1e-15 && w.y.abs() > 0.1);
    for m in [a, b] {
        assert!((m * w).cross(&w).norm() < 1e-15);
    }
}

#[test]
fn commutator_vector_examples() {
    let a = diag(1.0, 0.0, 0.0);
    let b = sym_e(0, 1);
    let w = commutator_vector(&a, &b);
    assert!((w - Vector3::new(0.0, 0.0, 1.0 / 3.0)).norm() < 1e-15);
    assert_eq!(commutator_vector(&a, &a), Vector3::zeros());
    assert_eq!(commutator_vector(&diag(1.0, 2.0, 3.0), &diag(-4.0, 0.5, 1.0)), Vector3::zeros());
}

#[test]
fn single_tensor_orthotropy() {
    assert!(is_orthotropic_single(&diag(1.0, 2.0, 3.0), TOL));
    assert!(!is_orthotropic_single(&diag(1.0, 1.0, 2.0), TOL));
    assert!(!is_orthotropic_single(&Matrix3::identity(), TOL));
}

#[test]
fn rotation_and_scale_invariance() {
    for (fam, class) in fixtures() {
        for seed in 0..50 {
            let g = random_rotation(seed);
            let m = g.matrix();
            let rotated: Vec<_> = fam.iter().map(|a| m * a * m.transpose()).collect();
            assert_eq!(classify_family(&rotated, TOL).unwrap(), class);
        }
        for s in [1e-3, 1e3] {
            for k in 0..fam.len() {
                let mut scaled = fam.clone();
                scaled[k] *= s;
                assert_eq!(classify_family(&scaled, TOL).unwrap(), class);
            }
        }
        let mut with_q = fam.clone();
        with_q.push(Matrix3::identity());
        assert_eq!(classify_family(&with_q, TOL).unwrap(), class);
    }
}

#[test]
fn diagonal_families_are_at_least_orthotropic() {
    let mut r = rng(30);
    for _ in 0..100 {
        let n = r.gen_range(1..5);
        let fam: Vec<_> = (0..n)
            .map(|_| {
                let mut v = Vector3::from_fn(|_, _| r.gen_range(-2i32..3) as f64);
                if r.gen_bool(0.3) {
                    v[1] = v[0];
                }
                Matrix3::from_diagonal(&v)
            })
            .collect();
        let c = classify_family(&fam, TOL).unwrap();
        assert!(
            matches!(c, FamilyClass::Isotropic | FamilyClass::TransverselyIsotropic | FamilyClass::Orthotropic),
            "{c}"
        );
    }
}

/// Class from eigenvalue multiplicities, the independent oracle.
fn eigen_class(m: &Matrix3<f64>) -> FamilyClass {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gap = 1e-6 * m.norm();
    let distinct = 1 + ev.windows(2).filter(|w| w[1] - w[0] > gap).count();
    match distinct {
        1 => FamilyClass::Isotropic,
        2 => FamilyClass::TransverselyIsotropic,
        _ => FamilyClass::Orthotropic,
    }
}

#[test]
fn agrees_with_eigenstructure_on_single_tensors() {
    let mut r = rng(31);
    for k in 0..200 {
        let g = elasym::Rotation::random(&mut r);
        let l1: f64 = r.gen_range(-2.0..2.0);
        let l2: f64 = r.gen_range(-2.0..2.0);
        let l3: f64 = r.gen_range(-2.0..2.0);
        let lam = match k % 3 {
            0 => Vector3::new(l1, l1, l1),
            1 => Vector3::new(l1, l1, l2),
            _ => Vector3::new(l1, l2, l3),
        };
        let m = g.matrix() * Matrix3::from_diagonal(&lam) * g.matrix().transpose();
        let m = (m + m.transpose()) * 0.5;
        assert_eq!(classify_family(&[m], TOL).unwrap(), eigen_class(&m), "{lam:?}");
    }
}

#[test]
fn orthotropic_combinations() {
    let a = diag(1.0, 2.0, 3.0);
    assert_eq!(orthotropic_combination(&a, &diag(1.0, 1.0, 2.0), TOL).unwrap(), a);

    let a = diag(1.0, 1.0, -2.0);
    let b = diag(-2.0, 1.0, 1.0);
    let d = orthotropic_combination(&a, &b, TOL).unwrap();
    let disc = (d * d).trace().powi(3) - 6.0 * (d * d * d).trace().powi(2);
    assert!(disc.abs() > 1e-6);
    assert!(is_orthotropic_single(&d, TOL));

    let n = Vector3::new(1.0, 1.0, 0.0).normalize();
    let b = n * n.transpose() * 3.0 - Matrix3::identity();
    let d = orthotropic_combination(&a, &b, TOL).unwrap();
    assert!(is_orthotropic_single(&d, TOL));

    assert!(orthotropic_combination(&Matrix3::identity(), &diag(1.0, 1.0, 2.0), TOL).is_err());
    assert!(orthotropic_combination(&a, &(a * 2.0), TOL).is_err());
}
