//! Property suites run by `elasym verify`. Each check reports the worst
//! residual seen over its samples together with the threshold it must meet.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridge::{cartan_pullback, kappa, transvectant, verify_translation};
use crate::elasticity::{classify_elasticity, generate_elasticity, integrity_basis, ElasticityTensor};
use crate::error::{Error, Result};
use crate::h4::classify::cubic_tensor;
use crate::h4::{boehler, ck, d3, eval_basis};
use crate::tensor::ops::{deviator_matrix, sym_product};
use crate::tensor::{harmonic_part, rotate, HarmTensor, Rotation, SymTensor};
use crate::H4Class;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Core,
    Covariants,
    Bridge,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Covariants => "covariants",
            Suite::Bridge => "bridge",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "covariants" => Ok(Suite::Covariants),
            "bridge" => Ok(Suite::Bridge),
            "all" => Ok(Suite::All),
            _ => Err(Error::Precondition("suite must be core, covariants, bridge or all")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub suite: &'static str,
    pub name: String,
    pub samples: usize,
    pub residual: f64,
    pub threshold: f64,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.residual <= self.threshold
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(Row::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<11} {:<44} {:>7} {:>11} {:>9}  result", "suite", "check", "samples", "residual", "threshold")?;
        for r in &self.rows {
            let verdict = if r.passed() { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{:<11} {:<44} {:>7} {:>11.3e} {:>9.0e}  {verdict}",
                r.suite, r.name, r.samples, r.residual, r.threshold
            )?;
        }
        Ok(())
    }
}

struct Acc {
    suite: &'static str,
    rows: Vec<Row>,
}

impl Acc {
    fn push(&mut self, name: &str, samples: usize, residual: f64, threshold: f64) {
        self.rows.push(Row { suite: self.suite, name: name.into(), samples, residual, threshold });
    }
}

fn random_sym<R: Rng>(rng: &mut R, order: usize) -> SymTensor {
    let n = (order + 1) * (order + 2) / 2;
    SymTensor::from_components(order, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).expect("length matches")
}

fn random_unit_h4<R: Rng>(rng: &mut R) -> HarmTensor {
    let h = HarmTensor::project(&random_sym(rng, 4));
    h.scale(1.0 / h.norm())
}

fn rotated(g: &Rotation, h: &HarmTensor) -> HarmTensor {
    HarmTensor::project(&rotate(g, h.as_sym()))
}

fn core(seed: u64) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Acc { suite: "core", rows: Vec::new() };

    let mut worst = 0.0f64;
    for _ in 0..100 {
        let m = nalgebra::Matrix6::from_fn(|_, _| rng.gen_range(-1.0..1.0));
        let e = ElasticityTensor::from_voigt(&(m + m.transpose()))?;
        let back = e.decompose().reconstruct()?;
        worst = worst.max((back.to_kelvin() - e.to_kelvin()).norm() / e.norm());
    }
    acc.push("decompose/reconstruct round trip", 100, worst, 1e-12);

    let mut worst = 0.0f64;
    for _ in 0..50 {
        let s = random_sym(&mut rng, 4);
        let t = random_sym(&mut rng, 2);
        let lhs = sym_product(&s, &t).to_poly();
        let rhs = &s.to_poly() * &t.to_poly();
        worst = worst.max(SymTensor::from_poly(&(&lhs - &rhs)).norm());
    }
    acc.push("symmetric product is polynomial product", 50, worst, 1e-12);

    let mut worst = 0.0f64;
    for _ in 0..50 {
        let s = random_sym(&mut rng, 4);
        let g = Rotation::random(&mut rng);
        let lhs = harmonic_part(&rotate(&g, &s));
        let rhs = rotate(&g, &harmonic_part(&s));
        worst = worst.max((&lhs - &rhs).norm());
    }
    acc.push("harmonic projection commutes with rotations", 50, worst, 1e-12);

    let mut failures = 0usize;
    let mut count = 0usize;
    for class in H4Class::ALL {
        for s in 0..5 {
            let e = generate_elasticity(class, seed.wrapping_add(s), false)?;
            for _ in 0..10 {
                count += 1;
                if classify_elasticity(&e.rotate(&Rotation::random(&mut rng)), crate::DEFAULT_TOL)? != class {
                    failures += 1;
                }
            }
        }
    }
    acc.push("classification of rotated fixtures (failures)", count, failures as f64, 0.0);
    Ok(acc.rows)
}

fn covariants(seed: u64) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Acc { suite: "covariants", rows: Vec::new() };

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let h = random_unit_h4(&mut rng);
        let g = Rotation::random(&mut rng);
        let lhs = eval_basis(&rotated(&g, &h));
        for (a, b) in lhs.iter().zip(eval_basis(&h)) {
            let expect = rotate(&g, &b.value);
            worst = worst.max((&a.value - &expect).norm() / expect.norm().max(1e-300));
        }
    }
    acc.push("70 generators are equivariant", 20, worst, 1e-8);

    let mut worst = 0.0f64;
    let mut c3 = 0.0f64;
    for _ in 0..100 {
        let h = random_unit_h4(&mut rng);
        let b = boehler(&h);
        let (j2, j3, j4, j6) = (b.j(2), b.j(3), b.j(4), b.j(6));
        let d = b.d(3);
        let rel = 240.0 * j6 + 39.0 * j2.powi(3) + 190.0 * j3 * j3 - 198.0 * j2 * j4 - 540.0 * (d * d).trace();
        worst = worst.max(rel.abs());
        c3 = c3.max((ck(&h, 3)? - deviator_matrix(&d3(&h)) * 2.0).norm());
    }
    acc.push("relation between J2, J3, J4, J6 and tr d3^2", 100, worst, 1e-9);
    acc.push("c3 = 2 d3'", 100, c3, 1e-12);

    let mut worst = 0.0f64;
    for _ in 0..10 {
        let h = rotated(&Rotation::random(&mut rng), &cubic_tensor());
        let h = h.scale(1.0 / h.norm());
        let b = boehler(&h);
        let j = |k| b.j(k);
        let mut r = [
            3.0 * j(4) - j(2).powi(2),
            30.0 * j(3).powi(2) - j(2).powi(3),
            9.0 * j(6) - j(2).powi(3),
        ]
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
        for k in [5, 7, 8, 9, 10] {
            r = r.max(j(k).abs());
        }
        worst = worst.max(r);
    }
    acc.push("cubic syzygies", 10, worst, 1e-9);

    let mut worst = 0.0f64;
    for _ in 0..3 {
        let m = nalgebra::Matrix6::from_fn(|_, _| rng.gen_range(-1.0..1.0));
        let e = ElasticityTensor::from_voigt(&(m + m.transpose()))?;
        let base = integrity_basis(&e);
        let rot = integrity_basis(&e.rotate(&Rotation::random(&mut rng)));
        for (x, y) in base.entries.iter().zip(&rot.entries) {
            worst = worst.max((x.value - y.value).abs() / x.value.abs().max(1e-3));
        }
    }
    acc.push("297 invariants are rotation invariant", 3, worst, 1e-9);
    Ok(acc.rows)
}

fn bridge(seed: u64) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = Acc { suite: "bridge", rows: Vec::new() };

    for n in [2, 4] {
        for p in [2, 4] {
            for r in 0..=n.min(p) {
                let (mut even, mut odd) = (0.0f64, 0.0f64);
                for _ in 0..5 {
                    let h1 = HarmTensor::project(&random_sym(&mut rng, n));
                    let h2 = HarmTensor::project(&random_sym(&mut rng, p));
                    let res = verify_translation(&h1, &h2, r)?;
                    even = even.max(res.even / res.scale);
                    if let Some(o) = res.odd {
                        odd = odd.max(o / res.scale);
                    }
                }
                acc.push(&format!("even identity n={n} p={p} r={r}"), 5, even, 1e-9);
                if r < n.min(p) {
                    acc.push(&format!("odd identity n={n} p={p} r={r}"), 5, odd, 1e-9);
                }
            }
        }
    }

    let k = kappa(4, 4, 1)?;
    let err = ((*k.numer() * 12 - *k.denom() * 7) as f64).abs();
    acc.push("kappa(4,4,1) = 7/12", 1, err, 0.0);

    let mut failures = 0usize;
    for n in 1..=6 {
        for _ in 0..5 {
            if !cartan_pullback(&HarmTensor::project(&random_sym(&mut rng, n))).is_real_form(1e-12) {
                failures += 1;
            }
        }
    }
    acc.push("pullbacks are real forms (failures)", 30, failures as f64, 0.0);

    let mut worst = 0.0f64;
    for d in 1..=8 {
        let f = cartan_pullback(&HarmTensor::project(&random_sym(&mut rng, d)));
        worst = worst.max(transvectant(&f, &f, 1).norm() / (f.norm() * f.norm()));
    }
    acc.push("odd self-transvectant vanishes", 8, worst, 1e-12);
    Ok(acc.rows)
}

/// Runs `suite`; with [`Suite::All`] the three suites run on separate
/// threads and their rows are concatenated in a fixed order.
pub fn run(suite: Suite, seed: u64) -> Result<Report> {
    let rows = match suite {
        Suite::Core => core(seed)?,
        Suite::Covariants => covariants(seed)?,
        Suite::Bridge => bridge(seed)?,
        Suite::All => {
            let (a, b, c) = std::thread::scope(|s| {
                let a = s.spawn(|| core(seed));
                let b = s.spawn(|| covariants(seed));
                let c = s.spawn(|| bridge(seed));
                (a.join(), b.join(), c.join())
            });
            let join = |r: std::thread::Result<Result<Vec<Row>>>| r.unwrap_or_else(|e| std::panic::resume_unwind(e));
            let mut rows = join(a)?;
            rows.extend(join(b)?);
            rows.extend(join(c)?);
            rows
        }
    };
    Ok(Report { rows })
}
