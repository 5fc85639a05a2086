mod common;

use common::*;
use elasym::tensor::ops::{cross_by_components, deviator_matrix};
use elasym::tensor::{
    cross, deviator, harmonic_decompose_sym, harmonic_part, harmonic_reconstruct, random_rotation, rotate,
    sym_contract_r, sym_product, trace, Poly, Rotation, SymTensor, Tensor,
};
use nalgebra::{Matrix3, Vector3};

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn symmetrize_matches_permutation_sum() {
    let mut r = rng(1);
    let t = random_full(&mut r, 3);
    let s = t.symmetrize();
    let perms = all_perms(3);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let idx = [i, j, k];
                let sum: f64 = perms.iter().map(|p| t.get(&[idx[p[0]], idx[p[1]], idx[p[2]]])).sum();
                assert!((s.get(&idx) - sum / 6.0).abs() < 1e-15);
            }
        }
    }
    let again = Tensor::from_sym(&s).unwrap().symmetrize();
    assert!((&again - &s).norm() < 1e-15);
}

#[test]
fn symmetrize_two_index_average() {
    let mut t = Tensor::zero(2).unwrap();
    t.set(&[0, 1], 1.0);
    let s = t.symmetrize();
    assert_eq!(s.get(&[0, 1]), 0.5);
    assert_eq!(s.get(&[1, 0]), 0.5);
}

#[test]
fn metric_polynomial_and_multinomial_weights() {
    let q = SymTensor::metric().to_poly();
    assert_eq!(q.coeff([2, 0, 0]), 1.0);
    assert_eq!(q.coeff([0, 2, 0]), 1.0);
    assert_eq!(q.coeff([0, 0, 2]), 1.0);
    assert_eq!(q.coeff([1, 1, 0]), 0.0);

    // S_1122 = 1 gives 4!/(2!2!) = 6 x²y², the value S(x, x, x, x).
    let mut s = SymTensor::zero(4);
    s.set(&[0, 0, 1, 1], 1.0);
    let p = s.to_poly();
    assert_eq!(p.coeff([2, 2, 0]), 6.0);
    let direct: f64 = {
        let t = Tensor::from_sym(&s).unwrap();
        let x = [0.3, -0.7, 0.0];
        let mut acc = 0.0;
        for idx in 0..81 {
            let ii = [idx / 27, idx / 9 % 3, idx / 3 % 3, idx % 3];
            acc += t.get(&ii) * ii.iter().map(|&i| x[i]).product::<f64>();
        }
        acc
    };
    assert!((p.eval([0.3, -0.7, 0.0]) - direct).abs() < 1e-15);
}

#[test]
fn polynomial_round_trip() {
    let mut r = rng(2);
    for k in 0..100 {
        let order = 1 + k % 6;
        let s = random_sym(&mut r, order);
        assert!((&SymTensor::from_poly(&s.to_poly()) - &s).norm() <= 1e-15 * s.norm());
        let p = s.to_poly();
        let back = SymTensor::from_poly_coefficients(order, p.coefficients().to_vec()).unwrap();
        assert!((&back.to_poly() - &p).max_abs() <= 1e-15 * p.max_abs());
    }
    assert!(SymTensor::from_poly_coefficients(3, vec![0.0; 4]).is_err());
}

#[test]
fn symmetric_product_is_polynomial_product() {
    let q = SymTensor::metric();
    let qq = sym_product(&q, &q);
    let r4 = Poly::r2().pow(2);
    assert!((&qq.to_poly() - &r4).max_abs() < 1e-15);

    let mut r = rng(3);
    let a = random_sym(&mut r, 2);
    let b = random_sym(&mut r, 2);
    assert_eq!(sym_product(&a, &b), sym_product(&b, &a));
    let c = random_sym(&mut r, 3);
    let lhs = sym_product(&sym_product(&a, &b), &c);
    let rhs = sym_product(&a, &sym_product(&b, &c));
    assert!((&lhs - &rhs).norm() < 1e-14);

    let h = random_harm(&mut r, 2);
    let qh = sym_product(&q, h.as_sym()).to_poly();
    let expect = &Poly::r2() * &h.as_sym().to_poly();
    assert!((&qh - &expect).max_abs() < 1e-15);

    // Direct path: symmetrize the tensor product.
    let direct = Tensor::from_sym(&a).unwrap().contract(&Tensor::from_sym(&c).unwrap(), 0).unwrap().symmetrize();
    assert!((&direct - &sym_product(&a, &c)).norm() < 1e-14);
}

#[test]
fn symmetric_contraction_prefactors_match_index_contraction() {
    let mut r = rng(4);
    for (p, q) in [(4, 2), (3, 3), (4, 4), (2, 5), (1, 3)] {
        for _ in 0..5 {
            let s1 = random_sym(&mut r, p);
            let s2 = random_sym(&mut r, q);
            for rr in 0..=p.min(q) {
                let fast = sym_contract_r(&s1, &s2, rr).unwrap();
                let direct = Tensor::from_sym(&s1)
                    .unwrap()
                    .contract(&Tensor::from_sym(&s2).unwrap(), rr)
                    .unwrap()
                    .symmetrize();
                assert!((&fast - &direct).norm() < 1e-13, "p={p} q={q} r={rr}");
            }
        }
    }
    let a = random_sym(&mut r, 3);
    let b = random_sym(&mut r, 3);
    let full = sym_contract_r(&a, &b, 3).unwrap().to_scalar();
    let frob = Tensor::from_sym(&a).unwrap().contract(&Tensor::from_sym(&b).unwrap(), 3).unwrap().to_scalar();
    assert!((full - frob).abs() < 1e-14);
    assert!(sym_contract_r(&a, &random_sym(&mut r, 2), 3).is_err());
}

#[test]
fn contraction_examples() {
    let mut r = rng(5);
    let h = random_harm(&mut r, 4);
    let hq = sym_contract_r(h.as_sym(), &SymTensor::metric(), 2).unwrap();
    assert!(hq.norm() < 1e-14);
    let a = common::random_full(&mut r, 2);
    let b = common::random_full(&mut r, 2);
    let ab = a.contract(&b, 1).unwrap().to_matrix();
    assert!((ab - a.to_matrix() * b.to_matrix()).norm() < 1e-15);
}

#[test]
fn cross_product_examples() {
    let e1 = SymTensor::vector(&Vector3::x());
    let e2 = SymTensor::vector(&Vector3::y());
    assert_eq!(cross(&e1, &e2).unwrap().to_vector(), Vector3::z());

    let mut r = rng(6);
    let q = SymTensor::metric();
    for order in 2..=4 {
        let s = random_sym(&mut r, order);
        assert!(cross(&s, &q).unwrap().norm() < 1e-14 * s.norm());
    }

    let a = Matrix3::from_diagonal(&Vector3::new(1.0, 2.0, 3.0));
    let x = cross(&SymTensor::from_matrix(&a), &SymTensor::from_matrix(&(a * a))).unwrap().to_poly();
    let expect = Poly::monomial([1, 1, 1], 2.0);
    assert!((&x - &expect).max_abs() < 1e-14);
}

#[test]
fn cross_product_polynomial_and_component_forms_agree() {
    let mut r = rng(7);
    for (p, q) in [(1, 1), (1, 2), (2, 2), (4, 2), (2, 4), (3, 2), (4, 4), (4, 3)] {
        let s1 = random_sym(&mut r, p);
        let s2 = random_sym(&mut r, q);
        let poly = cross(&s1, &s2).unwrap();
        let comp = cross_by_components(&s1, &s2).unwrap();
        assert!((&poly - &comp).norm() < 1e-13 * (1.0 + poly.norm()), "({p},{q})");
        let back = cross(&s2, &s1).unwrap();
        assert!((&poly + &back).norm() < 1e-15 * (1.0 + poly.norm()));
    }
}

#[test]
fn trace_and_deviator() {
    assert!((trace(&SymTensor::metric()).unwrap().to_scalar() - 3.0).abs() < 1e-15);
    assert!(deviator(&SymTensor::metric()).unwrap().norm() < 1e-15);
    assert!(trace(&SymTensor::vector(&Vector3::x())).is_err());

    let mut r = rng(8);
    for _ in 0..20 {
        let a = random_sym(&mut r, 2);
        let b = random_sym(&mut r, 2);
        let ab = sym_product(&a, &b);
        let lap = trace(&ab).unwrap();
        let direct = Tensor::from_sym(&ab).unwrap().trace_pair(0, 1).unwrap().symmetrize();
        assert!((&lap - &direct).norm() < 1e-14);
        let other_pair = Tensor::from_sym(&ab).unwrap().trace_pair(1, 3).unwrap().symmetrize();
        assert!((&lap - &other_pair).norm() < 1e-14);
        let m = random_matrix(&mut r);
        assert!(deviator_matrix(&m).trace().abs() < 1e-15);
    }
}

#[test]
fn harmonic_decomposition() {
    let mut r = rng(9);
    let h = random_harm(&mut r, 4);
    let parts = harmonic_decompose_sym(h.as_sym());
    assert_eq!(parts.len(), 3);
    assert!((&parts[0] - h.as_sym()).norm() < 1e-14);
    assert!(parts[1].norm() < 1e-14 && parts[2].norm() < 1e-14);

    let q = SymTensor::metric();
    let parts = harmonic_decompose_sym(&sym_product(&q, &q));
    assert!(parts[0].norm() < 1e-14 && parts[1].norm() < 1e-14);
    assert!((parts[2].to_scalar() - 1.0).abs() < 1e-14);

    for order in 0..=8 {
        for _ in 0..10 {
            let s = random_sym(&mut r, order);
            let parts = harmonic_decompose_sym(&s);
            assert_eq!(parts.len(), order / 2 + 1);
            for (k, p) in parts.iter().enumerate() {
                assert_eq!(p.order(), order - 2 * k);
                assert!(p.to_poly().laplacian().max_abs() < 1e-12 * s.norm().max(1.0));
            }
            let back = harmonic_reconstruct(&parts);
            assert!((&back - &s).norm() < 1e-12 * s.norm());
            assert!((&harmonic_part(&s) - &parts[0]).norm() < 1e-15);
            let again = harmonic_decompose_sym(&back);
            for (x, y) in again.iter().zip(&parts) {
                assert!((x - y).norm() < 1e-12 * s.norm());
            }
        }
    }
}

#[test]
fn rotation_action() {
    let mut r = rng(10);
    let s = random_sym(&mut r, 4);
    assert!((&rotate(&Rotation::identity(), &s) - &s).norm() < 1e-15);
    for seed in 0..20 {
        let g = random_rotation(seed);
        let g2 = random_rotation(seed + 100);
        assert!((&rotate(&g, &SymTensor::metric()) - &SymTensor::metric()).norm() < 1e-14);
        let gs = rotate(&g, &s);
        assert!((gs.norm() - s.norm()).abs() < 1e-12 * s.norm());
        let lhs = rotate(&g.compose(&g2), &s);
        let rhs = rotate(&g, &rotate(&g2, &s));
        assert!((&lhs - &rhs).norm() < 1e-13 * s.norm());
        let dense = Tensor::from_sym(&s).unwrap().rotate(g.matrix()).symmetrize();
        assert!((&dense - &gs).norm() < 1e-13 * s.norm());
        let h = random_harm(&mut r, 4);
        assert!(elasym::tensor::sym::trace_residual(&rotate(&g, h.as_sym())) < 1e-13);
    }
    let v = Vector3::new(0.2, -0.5, 0.9);
    let g = random_rotation(3);
    let rv = rotate(&g, &SymTensor::vector(&v)).to_vector();
    assert!((rv - g.matrix() * v).norm() < 1e-15);
}

#[test]
fn random_rotations() {
    assert_eq!(random_rotation(42), random_rotation(42));
    assert_ne!(random_rotation(42), random_rotation(43));
    let mut r = rng(11);
    let n = 100_000;
    let mut sum = 0.0;
    for _ in 0..n {
        let g = Rotation::random(&mut r);
        let m = g.matrix();
        assert!((m.transpose() * m - Matrix3::identity()).abs().max() < 1e-12);
        assert!((m.determinant() - 1.0).abs() < 1e-12);
        sum += m.trace();
    }
    // Under Haar measure tr g has mean 0 and variance 1.
    let mean = sum / n as f64;
    assert!(mean.abs() < 3.0 / (n as f64).sqrt(), "mean trace {mean}");
    assert!(Rotation::new(Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))).is_err());
}

#[test]
fn products_are_equivariant() {
    let mut r = rng(12);
    for seed in 0..10 {
        let g = random_rotation(seed);
        for (p, q) in [(2, 2), (4, 2), (3, 4), (4, 4)] {
            let s1 = random_sym(&mut r, p);
            let s2 = random_sym(&mut r, q);
            let (g1, g2) = (rotate(&g, &s1), rotate(&g, &s2));
            let scale = s1.norm() * s2.norm();
            let prod = sym_product(&g1, &g2);
            assert!((&prod - &rotate(&g, &sym_product(&s1, &s2))).norm() < 1e-10 * scale);
            for rr in 0..=p.min(q) {
                let c = sym_contract_r(&g1, &g2, rr).unwrap();
                let expect = rotate(&g, &sym_contract_r(&s1, &s2, rr).unwrap());
                assert!((&c - &expect).norm() < 1e-10 * scale);
            }
            let x = cross(&g1, &g2).unwrap();
            let expect = rotate(&g, &cross(&s1, &s2).unwrap());
            assert!((&x - &expect).norm() < 1e-10 * scale);
        }
    }
}
