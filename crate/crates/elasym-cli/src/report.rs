//! JSON reports. Every report carries `"schema": 1` and the name of the
//! command that produced it; field names are part of the stable interface.

use std::fmt::Write;

use elasym::elasticity::{classify_elasticity_report, integrity_basis, ElasticityTensor};
use elasym::h4::{boehler, classify_h4, eval_basis, Harm4Params};
use elasym::verify;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: u32 = 1;

fn mat3(m: &nalgebra::Matrix3<f64>) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

fn mat6(m: &nalgebra::Matrix6<f64>) -> [[f64; 6]; 6] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub family: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub lambda: f64,
    pub mu: f64,
    pub norm_a: f64,
    pub norm_b: f64,
    pub norm_h: f64,
    /// Class of the harmonic part alone.
    pub h_class: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub schema: u32,
    pub command: String,
    pub class: String,
    pub group: String,
    pub tolerance: f64,
    pub checks: Vec<CheckRow>,
    pub families: Vec<FamilyRow>,
    pub decomposition: DecompositionSummary,
}

pub fn classify(e: &ElasticityTensor, tol: f64) -> Result<ClassifyReport, CliError> {
    let rep = classify_elasticity_report(e, tol)?;
    let dec = e.decompose();
    let n = e.norm();
    // the harmonic part at the scale of a unit-norm tensor, as in the cascade
    let h_class = if n > 0.0 { classify_h4(&dec.h.scale(1.0 / n), tol)? } else { elasym::H4Class::Isotropic };
    Ok(ClassifyReport {
        schema: SCHEMA,
        command: "classify".into(),
        class: rep.class.as_str().into(),
        group: rep.class.group().into(),
        tolerance: tol,
        checks: rep
            .checks
            .iter()
            .map(|c| CheckRow { name: c.name.clone(), residual: c.residual, threshold: c.threshold, vanishes: c.vanishes() })
            .collect(),
        families: rep.families.iter().map(|(f, c)| FamilyRow { family: f.clone(), class: c.as_str().into() }).collect(),
        decomposition: DecompositionSummary {
            lambda: dec.lambda,
            mu: dec.mu,
            norm_a: dec.a.norm(),
            norm_b: dec.b.norm(),
            norm_h: dec.h.norm(),
            h_class: h_class.as_str().into(),
        },
    })
}

impl ClassifyReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let d = &self.decomposition;
        let _ = writeln!(s, "class: {} ({})", self.class, self.group);
        let _ = writeln!(s, "lambda = {:.6e}  mu = {:.6e}", d.lambda, d.mu);
        let _ = writeln!(s, "|a| = {:.3e}  |b| = {:.3e}  |H| = {:.3e}  class of H: {}", d.norm_a, d.norm_b, d.norm_h, d.h_class);
        let _ = writeln!(s, "tests (tolerance {:.0e}):", self.tolerance);
        for c in &self.checks {
            let verdict = if c.vanishes { "vanishes" } else { "nonzero" };
            let _ = writeln!(s, "  {:<24} {:>11.3e}  {verdict}", c.name, c.residual);
        }
        for f in &self.families {
            let _ = writeln!(s, "  family {:<16} {}", f.family, f.class);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroFlags {
    pub a: bool,
    pub b: bool,
    pub h: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema: u32,
    pub command: String,
    pub norm: f64,
    pub lambda: f64,
    pub mu: f64,
    pub a: [[f64; 3]; 3],
    pub b: [[f64; 3]; 3],
    /// `[λ₁, λ₂, λ₃, X₁, X₂, Y₁, Y₂, Z₁, Z₂]`.
    pub h_params: [f64; 9],
    pub h_kelvin: [[f64; 6]; 6],
    /// Parts below `tolerance·‖E‖`.
    pub zero: ZeroFlags,
    pub tolerance: f64,
}

pub fn decompose(e: &ElasticityTensor, tol: f64) -> DecomposeReport {
    let dec = e.decompose();
    let n = e.norm();
    let params = Harm4Params::from_tensor(&dec.h);
    DecomposeReport {
        schema: SCHEMA,
        command: "decompose".into(),
        norm: n,
        lambda: dec.lambda,
        mu: dec.mu,
        a: mat3(&dec.a),
        b: mat3(&dec.b),
        h_params: params.to_array(),
        h_kelvin: mat6(&params.kelvin()),
        zero: ZeroFlags { a: dec.a.norm() <= tol * n, b: dec.b.norm() <= tol * n, h: dec.h.norm() <= tol * n },
        tolerance: tol,
    }
}

impl DecomposeReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let flag = |z: bool| if z { "zero" } else { "nonzero" };
        let _ = writeln!(s, "|E| = {:.6e}", self.norm);
        let _ = writeln!(s, "lambda = {:.6e}", self.lambda);
        let _ = writeln!(s, "mu     = {:.6e}", self.mu);
        for (name, m, z) in [("a", &self.a, self.zero.a), ("b", &self.b, self.zero.b)] {
            let _ = writeln!(s, "{name} ({}):", flag(z));
            for row in m {
                let _ = writeln!(s, "  {:>13.6e} {:>13.6e} {:>13.6e}", row[0], row[1], row[2]);
            }
        }
        let _ = writeln!(s, "H ({}), parameters l1 l2 l3 x1 x2 y1 y2 z1 z2:", flag(self.zero.h));
        let p: Vec<String> = self.h_params.iter().map(|v| format!("{v:.6e}")).collect();
        let _ = writeln!(s, "  {}", p.join(" "));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantRow {
    pub label: String,
    /// `[deg H, deg a, deg b]`; absent for the invariants of `H` alone.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<[usize; 3]>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    /// Evaluated on `H/‖H‖`.
    pub residual: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub schema: u32,
    pub command: String,
    pub basis: String,
    pub entries: Vec<InvariantRow>,
    #[serde(default)]
    pub relations: Vec<Relation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Basis {
    /// J2 … J10 of the harmonic part, with the relations they satisfy
    Boehler,
    /// the 297 generators of the integrity basis of the elasticity tensor
    Full297,
}

pub fn invariants(e: &ElasticityTensor, basis: Basis, tol: f64) -> InvariantsReport {
    match basis {
        Basis::Full297 => InvariantsReport {
            schema: SCHEMA,
            command: "invariants".into(),
            basis: "full297".into(),
            entries: integrity_basis(e)
                .entries
                .into_iter()
                .map(|i| {
                    let (h, a, b) = i.multidegree;
                    InvariantRow { label: i.label, multidegree: Some([h, a, b]), value: i.value }
                })
                .collect(),
            relations: Vec::new(),
        },
        Basis::Boehler => {
            let h = e.decompose().h;
            let js = boehler(&h).js();
            let entries =
                (2..=10).map(|k| InvariantRow { label: format!("J{k}"), multidegree: None, value: js[k - 2] }).collect();
            let n = h.norm();
            let unit = if n > 0.0 { h.scale(1.0 / n) } else { h };
            let b = boehler(&unit);
            let j = |k| b.j(k);
            let d3 = b.d(3);
            let mut rel = vec![
                (
                    "240J6 + 39J2^3 + 190J3^2 - 198J2J4 - 540tr(d3^2)".to_string(),
                    240.0 * j(6) + 39.0 * j(2).powi(3) + 190.0 * j(3).powi(2) - 198.0 * j(2) * j(4)
                        - 540.0 * (d3 * d3).trace(),
                ),
                ("3J4 - J2^2".into(), 3.0 * j(4) - j(2).powi(2)),
                ("30J3^2 - J2^3".into(), 30.0 * j(3).powi(2) - j(2).powi(3)),
                ("9J6 - J2^3".into(), 9.0 * j(6) - j(2).powi(3)),
            ];
            for k in [5, 7, 8, 9, 10] {
                rel.push((format!("J{k}"), j(k)));
            }
            InvariantsReport {
                schema: SCHEMA,
                command: "invariants".into(),
                basis: "boehler".into(),
                entries,
                relations: rel
                    .into_iter()
                    .map(|(name, r)| Relation { name, residual: r.abs(), holds: r.abs() <= tol })
                    .collect(),
            }
        }
    }
}

impl InvariantsReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let md = e.multidegree.map(|[h, a, b]| format!("({h},{a},{b})")).unwrap_or_default();
            let _ = writeln!(s, "{:<10} {:<9} {:>15.8e}", e.label, md, e.value);
        }
        if !self.relations.is_empty() {
            let _ = writeln!(s, "relations on H/|H|:");
            for r in &self.relations {
                let verdict = if r.holds { "holds" } else { "fails" };
                let _ = writeln!(s, "  {:<50} {:>11.3e}  {verdict}", r.name, r.residual);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovariantRow {
    pub index: usize,
    pub id: String,
    pub degree: usize,
    pub order: usize,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovariantsReport {
    pub schema: u32,
    pub command: String,
    pub entries: Vec<CovariantRow>,
}

pub fn covariants(e: &ElasticityTensor) -> CovariantsReport {
    let h = e.decompose().h;
    CovariantsReport {
        schema: SCHEMA,
        command: "covariants".into(),
        entries: eval_basis(&h)
            .into_iter()
            .map(|c| CovariantRow { index: c.index, id: c.id.into(), degree: c.degree, order: c.order, norm: c.value.norm() })
            .collect(),
    }
}

impl CovariantsReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>3} {:<6} {:>6} {:>5} {:>15}", "#", "id", "degree", "order", "norm");
        for c in &self.entries {
            let _ = writeln!(s, "{:>3} {:<6} {:>6} {:>5} {:>15.8e}", c.index, c.id, c.degree, c.order, c.norm);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub suite: String,
    pub name: String,
    pub samples: usize,
    pub residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: String,
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub rows: Vec<VerifyRow>,
}

pub fn verify(suite: verify::Suite, seed: u64) -> Result<(VerifyReport, String), CliError> {
    let rep = verify::run(suite, seed)?;
    let out = VerifyReport {
        schema: SCHEMA,
        command: "verify".into(),
        suite: suite.as_str().into(),
        seed,
        passed: rep.passed(),
        rows: rep
            .rows
            .iter()
            .map(|r| VerifyRow {
                suite: r.suite.into(),
                name: r.name.clone(),
                samples: r.samples,
                residual: r.residual,
                threshold: r.threshold,
                passed: r.passed(),
            })
            .collect(),
    };
    Ok((out, rep.to_string()))
}
