//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::*;
use elasym::bridge::{cartan_pullback, kappa, verify_translation};
use elasym::elasticity::{classify_elasticity, generate_elasticity, integrity_basis, ElasticityTensor, HarmonicDecomposition};
use elasym::h4::classify::cubic_tensor;
use elasym::h4::{boehler, ck, cov_space_dims, d3, eval_basis, generate_normal_form};
use elasym::sym2::{classify_family, FamilyClass};
use elasym::tensor::ops::deviator_matrix;
use elasym::tensor::{random_rotation, rotate};
use elasym::{H4Class, HarmTensor, Rotation};
use nalgebra::{Matrix3, Matrix6, Vector3};
use num_rational::Ratio;
use rand::Rng;

const TOL: f64 = 1e-8;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn classification() -> Outcome {
    let start = Instant::now();
    let mut wrong = 0;
    let mut total = 0;
    for class in H4Class::ALL {
        for seed in 0..20 {
            let e = generate_elasticity(class, seed, false).unwrap();
            for k in 0..100 {
                let g = random_rotation(1_000_000 + 1000 * seed + k);
                total += 1;
                if classify_elasticity(&e.rotate(&g), TOL).unwrap() != class {
                    wrong += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(wrong == 0 && secs < 60.0, format!("{wrong}/{total} misclassified, {secs:.1} s"))
}

fn census() -> Outcome {
    let mut r = rng(200);
    let entries = eval_basis(&random_unit_h4(&mut r));
    let mut hist: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in &entries {
        *hist.entry((e.degree, e.order)).or_default() += 1;
    }
    // (degree, [(order, count)])
    let table: &[(usize, &[(usize, usize)])] = &[
        (0, &[(2, 1)]),
        (1, &[(4, 1)]),
        (2, &[(0, 1), (2, 1), (4, 1), (6, 1)]),
        (3, &[(0, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1), (9, 1)]),
        (4, &[(0, 1), (2, 2), (3, 1), (4, 1), (5, 2), (6, 1), (7, 1), (9, 1)]),
        (5, &[(0, 1), (1, 1), (2, 2), (3, 2), (4, 1), (5, 3), (7, 1)]),
        (6, &[(0, 1), (1, 1), (2, 2), (3, 3), (4, 1), (5, 1)]),
        (7, &[(0, 1), (1, 2), (2, 2), (3, 3)]),
        (8, &[(0, 1), (1, 2), (2, 2), (3, 2)]),
        (9, &[(0, 1), (1, 3), (2, 1)]),
        (10, &[(0, 1), (1, 2)]),
        (11, &[(1, 2)]),
        (12, &[(1, 1)]),
    ];
    let want: BTreeMap<(usize, usize), usize> =
        table.iter().flat_map(|(d, row)| row.iter().map(move |&(k, n)| ((*d, k), n))).collect();
    let inv = entries.iter().filter(|e| e.order == 0).count();
    let first = entries.iter().filter(|e| e.order == 1).count();
    let top = entries.iter().filter(|e| e.degree == 12).count();
    let pass = entries.len() == 70 && hist == want && inv == 9 && first == 14 && top == 1;
    outcome(pass, format!("{} entries, {inv} invariants, {first} order-1, {top} of degree 12", entries.len()))
}

fn equivariance() -> Outcome {
    let mut r = rng(201);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let h = random_unit_h4(&mut r);
        let g = Rotation::random(&mut r);
        let gh = HarmTensor::new(rotate(&g, h.as_sym()), 1e-12).unwrap();
        for (a, b) in eval_basis(&gh).iter().zip(eval_basis(&h)) {
            let expect = rotate(&g, &b.value);
            worst = worst.max((&a.value - &expect).norm() / expect.norm().max(1e-300));
        }
    }
    outcome(worst < 1e-8, format!("worst relative error {worst:.2e}"))
}

fn syzygies() -> Outcome {
    let mut r = rng(202);
    let (mut rel, mut c3) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let h = random_unit_h4(&mut r);
        let b = boehler(&h);
        let (j2, j3, j4, j6) = (b.j(2), b.j(3), b.j(4), b.j(6));
        let d = b.d(3);
        let v = 240.0 * j6 + 39.0 * j2.powi(3) + 190.0 * j3 * j3 - 198.0 * j2 * j4 - 540.0 * (d * d).trace();
        rel = rel.max(v.abs());
        c3 = c3.max((ck(&h, 3).unwrap() - deviator_matrix(&d3(&h)) * 2.0).norm());
    }
    let mut cubic = 0.0f64;
    for seed in 0..20 {
        let h = HarmTensor::new(rotate(&random_rotation(seed), cubic_tensor().as_sym()), 1e-12).unwrap();
        let h = h.scale(1.0 / h.norm());
        let b = boehler(&h);
        let j = |k| b.j(k);
        for v in [3.0 * j(4) - j(2).powi(2), 30.0 * j(3).powi(2) - j(2).powi(3), 9.0 * j(6) - j(2).powi(3)] {
            cubic = cubic.max(v.abs());
        }
        for k in [5, 7, 8, 9, 10] {
            cubic = cubic.max(j(k).abs());
        }
    }
    outcome(
        rel < 1e-9 && cubic < 1e-9 && c3 < 1e-12,
        format!("relation {rel:.2e}, cubic {cubic:.2e}, c3 - 2 d3' {c3:.2e}"),
    )
}

fn dimensions() -> Outcome {
    let expected = [
        (H4Class::Isotropic, (0, 1)),
        (H4Class::Cubic, (0, 1)),
        (H4Class::TransverselyIsotropic, (0, 2)),
        (H4Class::Tetragonal, (0, 2)),
        (H4Class::Trigonal, (0, 2)),
        (H4Class::Orthotropic, (0, 3)),
        (H4Class::Monoclinic, (1, 4)),
        (H4Class::Triclinic, (3, 6)),
    ];
    let mut bad = Vec::new();
    for (class, dims) in expected {
        let h = generate_normal_form(class, 3).unwrap();
        let gh = HarmTensor::new(rotate(&random_rotation(33), h.as_sym()), 1e-12).unwrap();
        let got = cov_space_dims(&gh, elasym::DEFAULT_RANK_TOL).unwrap();
        if got != dims {
            bad.push(format!("{class}: {got:?}"));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "all eight classes".to_string() } else { bad.join(", ") })
}

fn round_trip() -> Outcome {
    let mut r = rng(203);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let m = Matrix6::from_fn(|_, _| r.gen_range(-1.0..1.0));
        let e = ElasticityTensor::from_voigt(&(m + m.transpose())).unwrap();
        let back = e.decompose().reconstruct().unwrap();
        worst = worst.max((back.to_kelvin() - e.to_kelvin()).norm() / e.norm());
    }
    let mut parts = 0.0f64;
    for _ in 0..100 {
        let dec = HarmonicDecomposition {
            lambda: r.gen_range(-2.0..2.0),
            mu: r.gen_range(-2.0..2.0),
            a: random_deviator(&mut r),
            b: random_deviator(&mut r),
            h: random_harm(&mut r, 4),
        };
        let again = dec.reconstruct().unwrap().decompose();
        parts = parts
            .max((again.lambda - dec.lambda).abs())
            .max((again.mu - dec.mu).abs())
            .max((again.a - dec.a).norm())
            .max((again.b - dec.b).norm())
            .max((again.h.as_sym() - dec.h.as_sym()).norm());
    }
    outcome(worst <= 1e-12 && parts < 1e-13, format!("round trip {worst:.2e}, recovered parts {parts:.2e}"))
}

fn integrity() -> Outcome {
    let mut r = rng(204);
    let (mut inv, mut hom) = (0.0f64, 0.0f64);
    let mut len = 0;
    for k in 0..5 {
        let dec = HarmonicDecomposition {
            lambda: r.gen_range(0.5..2.0),
            mu: r.gen_range(0.5..2.0),
            a: random_deviator(&mut r),
            b: random_deviator(&mut r),
            h: random_harm(&mut r, 4),
        };
        let e = dec.reconstruct().unwrap();
        let base = integrity_basis(&e);
        len = base.len();
        let rot = integrity_basis(&e.rotate(&random_rotation(300 + k)));
        for (x, y) in base.entries.iter().zip(&rot.entries) {
            inv = inv.max((x.value - y.value).abs() / x.value.abs().max(1e-3));
        }
        let scaled = HarmonicDecomposition { a: dec.a * 2.0, b: dec.b * 3.0, h: dec.h.scale(5.0), ..dec.clone() };
        let s = integrity_basis(&scaled.reconstruct().unwrap());
        for (x, y) in base.entries.iter().zip(&s.entries) {
            let (dh, da, db) = x.multidegree;
            let f = 5f64.powi(dh as i32) * 2f64.powi(da as i32) * 3f64.powi(db as i32);
            hom = hom.max((x.value * f - y.value).abs() / (x.value * f).abs().max(1e-3));
        }
    }
    outcome(
        len == 297 && inv < 1e-9 && hom < 1e-9,
        format!("{len} entries, invariance {inv:.2e}, homogeneity {hom:.2e}"),
    )
}

fn bridge() -> Outcome {
    let mut r = rng(205);
    let mut worst = 0.0f64;
    for n in [2, 4] {
        for p in [2, 4] {
            for k in 0..=n.min(p) {
                for _ in 0..5 {
                    let res = verify_translation(&random_harm(&mut r, n), &random_harm(&mut r, p), k).unwrap();
                    worst = worst.max(res.even / res.scale);
                    if let Some(o) = res.odd {
                        worst = worst.max(o / res.scale);
                    }
                }
            }
        }
    }
    let kap = kappa(4, 4, 1).unwrap() == Ratio::new(7, 12);
    let mut real = true;
    for n in 1..=8 {
        for _ in 0..10 {
            real &= cartan_pullback(&random_harm(&mut r, n)).is_real_form(1e-12);
        }
    }
    outcome(
        worst < 1e-9 && kap && real,
        format!("worst residual {worst:.2e}, kappa(4,4,1) = 7/12: {kap}, real forms: {real}"),
    )
}

fn eigen_class(m: &Matrix3<f64>) -> FamilyClass {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gap = 1e-6 * m.norm();
    match 1 + ev.windows(2).filter(|w| w[1] - w[0] > gap).count() {
        1 => FamilyClass::Isotropic,
        2 => FamilyClass::TransverselyIsotropic,
        _ => FamilyClass::Orthotropic,
    }
}

fn sym2() -> Outcome {
    let mut r = rng(206);
    let mut wrong = 0;
    for k in 0..200 {
        let g = Rotation::random(&mut r);
        let (l1, l2, l3): (f64, f64, f64) = (r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let lam = match k % 3 {
            0 => Vector3::new(l1, l1, l1),
            1 => Vector3::new(l1, l1, l2),
            _ => Vector3::new(l1, l2, l3),
        };
        let m = g.matrix() * Matrix3::from_diagonal(&lam) * g.matrix().transpose();
        let m = (m + m.transpose()) * 0.5;
        if classify_family(&[m], TOL).unwrap() != eigen_class(&m) {
            wrong += 1;
        }
    }
    let diag = |a, b, c| Matrix3::from_diagonal(&Vector3::new(a, b, c));
    let e = |i: usize, j: usize| {
        let mut m = Matrix3::zeros();
        m[(i, j)] += 1.0;
        m[(j, i)] += 1.0;
        m
    };
    let fixtures = [
        (vec![Matrix3::identity(), Matrix3::identity() * 3.0], FamilyClass::Isotropic),
        (vec![diag(1.0, 1.0, 2.0), diag(3.0, 3.0, -1.0)], FamilyClass::TransverselyIsotropic),
        (vec![diag(1.0, 1.0, 2.0), diag(1.0, 2.0, 2.0)], FamilyClass::Orthotropic),
        (vec![diag(1.0, 2.0, 3.0), e(0, 1), diag(0.0, 1.0, 5.0)], FamilyClass::Monoclinic),
        (vec![diag(1.0, 2.0, 3.0), e(0, 1), e(1, 2)], FamilyClass::Triclinic),
    ];
    let mut bad_fixtures = 0;
    for (family, class) in fixtures {
        let g = random_rotation(7);
        let turned: Vec<_> = family.iter().map(|m| g.matrix() * m * g.matrix().transpose()).collect();
        if classify_family(&family, TOL).unwrap() != class || classify_family(&turned, TOL).unwrap() != class {
            bad_fixtures += 1;
        }
    }
    outcome(wrong == 0 && bad_fixtures == 0, format!("{wrong}/200 single tensors, {bad_fixtures}/5 fixtures wrong"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("classification of generated fixtures", classification),
        ("covariant basis census", census),
        ("covariant equivariance", equivariance),
        ("syzygies", syzygies),
        ("covariant space dimensions", dimensions),
        ("decomposition round trip", round_trip),
        ("integrity basis", integrity),
        ("binary form bridge", bridge),
        ("second-order family classifier", sym2),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {}: {name} ({})", i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
