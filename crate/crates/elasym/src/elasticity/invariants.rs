//! A minimal integrity basis of 297 invariants for the elasticity tensor,
//! built from the covariants of its harmonic part `H` and the deviators
//! `a`, `b`.
//!
//! Every joint invariant is a formula in the expression language of
//! [`crate::expr`], evaluated against `H`, `a`, `b` and the helper covariants
//! below. The `(H, a)` table is evaluated a second time with `b` bound to
//! `a` to give the `(H, b)` invariants.

use std::sync::OnceLock;

use nalgebra::Matrix3;

use super::decomp::{ElasticityTensor, HarmonicDecomposition};
use crate::expr::{self, Def, Env};
use crate::h4::covariants::base_env;
use crate::tensor::Tensor;

/// Multidegree `(deg_H, deg_a, deg_b)`.
pub type MultiDegree = (usize, usize, usize);

/// Covariants of `H` referenced by the joint invariant tables, on top of
/// `d2`, `d3`, `c3`, `c4`, `c5`.
pub const HELPERS: &[(&str, &str)] = &[
    ("c33", "tr(H x d2)"),
    ("c35", "H x d2"),
    ("c37", "H x sym(H:H)"),
    ("c39", "sym(H.H) x H"),
    ("c47", "H x sym(H:H:H)"),
    ("c4b5", "sym(H:H) x d2"),
    ("v5", "eps(d2*c3)"),
    ("v8a", "eps(d2*c3^2)"),
    ("v9a", "eps(d2*c4*c3)"),
    ("v9b", "eps(c3*d2*c4)"),
];

/// Joint invariants of `(H, a)`, multidegree `(deg_H, deg_a)`.
pub const JOINT_HA: &[(usize, (usize, usize), &str)] = &[
    (1, (2, 1), "tr(a*d2)"),
    (2, (1, 2), "a:H:a"),
    (3, (2, 2), "tr(a^2*d2)"),
    (4, (3, 1), "tr(a*d3)"),
    (5, (1, 3), "a:H:a^2"),
    (6, (2, 2), "a:sym(H:H):a"),
    (7, (1, 4), "a^2:H:a^2"),
    (8, (2, 3), "a:sym(H:H):a^2"),
    (9, (2, 3), "a:(a:sym(H.H):a)"),
    (10, (3, 2), "a:sym(H:H:H):a"),
    (11, (3, 2), "tr(a^2*d3)"),
    (12, (4, 1), "tr(a*d2^2)"),
    (13, (4, 1), "a:sym(H:H):d2"),
    (14, (2, 4), "a^2:sym(H:H):a^2"),
    (15, (2, 4), "a^2:(a:sym(H.H):a)"),
    (16, (3, 3), "a:(a:sym(H:H.H):a)"),
    (17, (3, 3), "a:sym(H:H:H):a^2"),
    (18, (3, 3), "c33|(a^2 x a)"),
    (19, (4, 2), "d2^2:a^2"),
    (20, (4, 2), "a:sym(H:H:H:H):a"),
    (21, (4, 2), "a^2:c4"),
    (22, (5, 1), "a:(d2*d3)"),
    (23, (5, 1), "a:sym(H:H:H):d2"),
    (24, (2, 5), "a:(a^2:sym(H.H):a^2)"),
    (25, (3, 4), "a:(c35|(a^2 x a))"),
    (26, (3, 4), "a:(a:sym(H:H.H):a^2)"),
    (27, (4, 3), "a:sym(H:H:H:H):a^2"),
    (28, (4, 3), "tr(H x c3)|(a^2 x a)"),
    (29, (4, 3), "a:(a:sym(H:H.(H:H)):a)"),
    (30, (5, 2), "a:sym(H.d2^2):a"),
    (31, (5, 2), "c5:a^2"),
    (32, (5, 2), "(d2*c3):a^2"),
    (33, (6, 1), "(d2*c4):a"),
    (34, (6, 1), "c3^2:a"),
    (35, (7, 1), "(d2^2*c3):a"),
    (36, (7, 1), "(c4*c3):a"),
    (37, (6, 2), "(d2*c4):a^2"),
    (38, (6, 2), "c3^2:a^2"),
    (39, (6, 2), "a:sym(H:H.d2^2):a"),
    (40, (5, 3), "tr(H x d2^2)|(a^2 x a)"),
    (41, (5, 3), "a:sym(H.d2^2):a^2"),
    (42, (4, 4), "a:(c4b5|(a^2 x a))"),
    (43, (4, 4), "a:(a:sym(H:H.(H:H)):a^2)"),
    (44, (3, 5), "a^2:(a^2:sym(H:H.H):a)"),
    (45, (6, 3), "(c33:a).a.(c33:a)"),
    (46, (7, 2), "(c4*c3):a^2"),
    (47, (7, 2), "(d2^2*c3):a^2"),
    (48, (8, 1), "(d2*c3^2):a"),
    (49, (8, 1), "c4^2:a"),
    (50, (8, 2), "c4^2:a^2"),
    (51, (9, 1), "(d2^2*c5):a"),
    (52, (10, 1), "v5.a.v5"),
];

/// Joint invariants of `(H, a, b)`.
pub const JOINT_HAB: &[(usize, MultiDegree, &str)] = &[
    (1, (1, 1, 1), "a:H:b"),
    (2, (1, 1, 2), "a:H:b^2"),
    (3, (1, 1, 2), "b:H:(a*b)"),
    (4, (1, 2, 1), "b:H:a^2"),
    (5, (1, 2, 1), "a:H:(a*b)"),
    (6, (2, 1, 1), "a:(d2*b)"),
    (7, (2, 1, 1), "a:sym(H:H):b"),
    (8, (1, 1, 3), "b^2:H:(a*b)"),
    (9, (1, 1, 3), "b:H:(a*b^2)"),
    (10, (1, 2, 2), "a^2:H:b^2"),
    (11, (1, 2, 2), "b:H:(a^2*b)"),
    (12, (1, 2, 2), "(a*b):H:(a*b)"),
    (13, (1, 3, 1), "a^2:H:(a*b)"),
    (14, (1, 3, 1), "a:H:(a^2*b)"),
    (15, (2, 1, 2), "a:sym(H:H):b^2"),
    (16, (2, 1, 2), "a:(b:sym(H.H):b)"),
    (17, (2, 2, 1), "b:(a:sym(H.H):a)"),
    (18, (2, 1, 2), "a:(b^2*d2)"),
    (19, (2, 2, 1), "a^2:(b*d2)"),
    (20, (2, 2, 1), "b:sym(H:H):a^2"),
    (21, (2, 2, 1), "a:sym(H:H):(a*b)"),
    (22, (3, 1, 1), "a:sym(H:H:H):b"),
    (23, (3, 1, 1), "(a*b):d3"),
    (24, (2, 1, 2), "b:sym(H:H):(a*b)"),
    (25, (3, 1, 1), "c33|(a x b)"),
    (26, (1, 1, 4), "b^2:H:(a*b^2)"),
    (27, (1, 2, 3), "b:H:(a^2*b^2)"),
    (28, (1, 2, 3), "(a*b):H:(a*b^2)"),
    (29, (1, 3, 2), "(a*b):H:(a^2*b)"),
    (30, (1, 3, 2), "a:H:(a^2*b^2)"),
    (31, (1, 4, 1), "a^2:H:(a^2*b)"),
    (32, (2, 1, 3), "b:sym(H:H):(a*b^2)"),
    (33, (2, 1, 3), "b^2:sym(H:H):(a*b)"),
    (34, (2, 2, 2), "b:sym(H:H):(a^2*b)"),
    (35, (2, 2, 2), "(a*b):sym(H:H):(a*b)"),
    (36, (2, 2, 2), "a^2:sym(H:H):b^2"),
    (37, (2, 3, 1), "a^2:sym(H:H):(a*b)"),
    (38, (2, 3, 1), "a:sym(H:H):(a^2*b)"),
    (39, (2, 1, 3), "b^2:(a:sym(H.H):b)"),
    (40, (2, 1, 3), "b:(b:sym(H.H):(a*b))"),
    (41, (2, 2, 2), "b:(b:sym(H.H):a^2)"),
    (42, (2, 3, 1), "a:(a:sym(H.H):(a*b))"),
    (43, (2, 3, 1), "a:(b:sym(H.H):a^2)"),
    (44, (2, 2, 2), "a:(b:sym(H.H):(a*b))"),
    (45, (2, 2, 2), "a:(a:sym(H.H):b^2)"),
    (46, (3, 1, 2), "c33|(a x b^2)"),
    (47, (3, 2, 1), "c33|(a x sym(a*b))"),
    (48, (3, 1, 2), "c33|(b x sym(a*b))"),
    (49, (3, 2, 1), "c33|(a^2 x b)"),
    (50, (3, 1, 2), "a:sym(H:H:H):b^2"),
    (51, (3, 1, 2), "b:sym(H:H:H):(a*b)"),
    (52, (3, 2, 1), "b:sym(H:H:H):a^2"),
    (53, (3, 2, 1), "a:sym(H:H:H):(a*b)"),
    (54, (3, 1, 2), "b:(c35|(a x b))"),
    (55, (3, 2, 1), "a:(c35|(a x b))"),
    (56, (3, 1, 2), "a:(b:sym(H:H.H):b)"),
    (57, (3, 2, 1), "b:(a:sym(H:H.H):a)"),
    (58, (4, 1, 1), "d2^2:(a*b)"),
    (59, (4, 1, 1), "c4:(a*b)"),
    (60, (4, 1, 1), "tr(H x c3)|(a x b)"),
    (61, (4, 1, 1), "a:sym(H:H:H:H):b"),
    (62, (2, 1, 4), "b:(b:sym(H.H):(a*b^2))"),
    (63, (2, 1, 4), "a:(b^2:sym(H.H):b^2)"),
    (64, (2, 1, 4), "b:(b^2:sym(H.H):(a*b))"),
    (65, (2, 2, 3), "b:(b:sym(H.H):(a^2*b))"),
    (66, (2, 2, 3), "a:(b^2:sym(H.H):(a*b))"),
    (67, (2, 3, 2), "b:(a^2:sym(H.H):(a*b))"),
    (68, (2, 3, 2), "a:(b:sym(H.H):(a^2*b))"),
    (69, (2, 3, 2), "a:(a^2:sym(H.H):b^2)"),
    (70, (2, 4, 1), "a:(a^2:sym(H.H):(a*b))"),
    (71, (2, 4, 1), "a:(a:sym(H.H):(a^2*b))"),
    (72, (2, 4, 1), "b:(a^2:sym(H.H):a^2)"),
    (73, (2, 3, 2), "a:((a*b):sym(H.H):(a*b))"),
    (74, (2, 2, 3), "b:((a*b):sym(H.H):(a*b))"),
    (75, (2, 2, 3), "b:(a^2:sym(H.H):b^2)"),
    (76, (3, 1, 3), "b:(c35|(b x sym(a*b)))"),
    (77, (3, 2, 2), "a:(c35|(b x sym(a*b)))"),
    (78, (3, 2, 2), "a:(c35|(a x b^2))"),
    (79, (3, 2, 2), "b:(c35|(a^2 x b))"),
    (80, (3, 3, 1), "a:(c35|(a^2 x b))"),
    (81, (3, 3, 1), "a:(c35|(a x sym(a*b)))"),
    (82, (3, 3, 1), "b:(c35|(a^2 x a))"),
    (83, (3, 1, 3), "b:(c35|(a x b^2))"),
    (84, (3, 1, 3), "a:(c35|(b^2 x b))"),
    (85, (3, 2, 2), "(a*b):sym(H:H:H):(a*b)"),
    (86, (3, 1, 3), "b:(b:sym(H:H.H):(a*b))"),
    (87, (3, 1, 3), "a:(b:sym(H:H.H):b^2)"),
    (88, (3, 2, 2), "a:(a:sym(H:H.H):b^2)"),
    (89, (3, 2, 2), "a:(b:sym(H:H.H):(a*b))"),
    (90, (3, 2, 2), "b:(b:sym(H:H.H):a^2)"),
    (91, (3, 3, 1), "a:(b:sym(H:H.H):a^2)"),
    (92, (3, 3, 1), "a:(a:sym(H:H.H):(a*b))"),
    (93, (3, 1, 3), "b:(c37|(a x b)):b"),
    (94, (3, 2, 2), "a:(c37|(a x b)):b"),
    (95, (3, 3, 1), "a:(c37|(a x b)):a"),
    (96, (4, 1, 2), "tr(H x c3)|(a x b^2)"),
    (97, (4, 1, 2), "tr(H x c3)|(b x sym(a*b))"),
    (98, (4, 2, 1), "tr(H x c3)|(a x sym(a*b))"),
    (99, (4, 2, 1), "tr(H x c3)|(a^2 x b)"),
    (100, (4, 1, 2), "b:sym(H:H:H:H):(a*b)"),
    (101, (4, 2, 1), "a:sym(H:H:H:H):(a*b)"),
    (102, (4, 2, 1), "b:sym(H:H:H:H):a^2"),
    (103, (4, 1, 2), "a:sym(H:H:H:H):b^2"),
    (104, (4, 1, 2), "b:((H x c3)|(a x b))"),
    (105, (4, 2, 1), "a:((H x c3)|(a x b))"),
    (106, (4, 1, 2), "b:(c4b5|(a x b))"),
    (107, (4, 2, 1), "a:(c4b5|(a x b))"),
    (108, (4, 1, 2), "a:(b:sym(H:H.(H:H)):b)"),
    (109, (4, 2, 1), "a:(a:sym(H:H.(H:H)):b)"),
    (110, (5, 1, 1), "c5:(a*b)"),
    (111, (5, 1, 1), "sym(d2*c3):(a*b)"),
    (112, (5, 1, 1), "(d2 x c3)|(a x b)"),
    (113, (5, 1, 1), "tr(H x d2^2)|(a x b)"),
    (114, (5, 1, 1), "a:sym(H.d2^2):b"),
    (115, (3, 1, 4), "b:(b^2:sym(H:H.H):(a*b))"),
    (116, (3, 2, 3), "b:((a*b):sym(H:H.H):(a*b))"),
    (117, (3, 4, 1), "b:(a^2:sym(H:H.H):a^2)"),
    (118, (3, 3, 2), "b:(a^2:sym(H:H.H):(a*b))"),
    (119, (3, 1, 4), "b:(c37|(b x sym(a*b))):b"),
    (120, (3, 2, 3), "a:(c37|(b x sym(a*b))):b"),
    (121, (3, 3, 2), "a:(c37|(a x sym(a*b))):b"),
    (122, (3, 1, 4), "b:((c39|(a x b)):b):b"),
    (123, (3, 4, 1), "a:((c39|(a x b)):a):a"),
    (124, (3, 3, 2), "a:((c39|(a x b)):a):b"),
    (125, (3, 2, 3), "a:((c39|(a x b)):b):b"),
    (126, (3, 4, 1), "a:(c37|(a x sym(a*b))):a"),
    (127, (4, 3, 1), "a:(c4b5|(a x sym(a*b)))"),
    (128, (4, 3, 1), "a:(c4b5|(a^2 x b))"),
    (129, (4, 2, 2), "b:(c4b5|(a^2 x b))"),
    (130, (4, 1, 3), "a:(b:sym(H:H.(H:H)):b^2)"),
    (131, (4, 3, 1), "a:(b:sym(H:H.(H:H)):a^2)"),
    (132, (4, 3, 1), "a:(a:sym(H:H.(H:H)):(a*b))"),
    (133, (4, 1, 3), "b:(b:sym(H:H.(H:H)):(a*b))"),
    (134, (4, 2, 2), "a:(b:sym(H:H.(H:H)):(a*b))"),
    (135, (4, 2, 2), "b:(b:sym(H:H.(H:H)):a^2)"),
    (136, (4, 2, 2), "a:(a:sym(H:H.(H:H)):b^2)"),
    (137, (4, 1, 3), "b:(c47|(a x b)):b"),
    (138, (4, 3, 1), "a:(c47|(a x b)):a"),
    (139, (4, 2, 2), "b:(c47|(a x b)):a"),
    // Printed as a copy of 127. Its a <-> b mirror is the one entry missing
    // from the (4,1,3) block, which otherwise has one generator fewer than
    // its mirror block (4,3,1).
    (140, (4, 1, 3), "b:(c4b5|(b x sym(a*b)))"),
    (141, (4, 2, 2), "a:(c4b5|(b x sym(a*b)))"),
    (142, (4, 1, 3), "b:(c4b5|(a x b^2))"),
    (143, (5, 2, 1), "a:sym(H.d2^2):(a*b)"),
    (144, (5, 2, 1), "b:sym(H.d2^2):a^2"),
    (145, (5, 1, 2), "b:sym(H.d2^2):(a*b)"),
    (146, (5, 1, 2), "a:sym(H.d2^2):b^2"),
    (147, (5, 1, 2), "b:((H x d2^2)|(a x b))"),
    (148, (5, 2, 1), "a:((H x c4)|(a x b))"),
    (149, (5, 1, 2), "b:((H x c4)|(a x b))"),
    (150, (5, 2, 1), "a:((sym(H:H) x c3)|(a x b))"),
    (151, (5, 1, 2), "b:((sym(H:H) x c3)|(a x b))"),
    (152, (5, 2, 1), "a:((H x d2^2)|(a x b))"),
    (153, (5, 2, 1), "tr(H x d2^2)|(a^2 x b)"),
    (154, (5, 1, 2), "tr(H x d2^2)|(a x b^2)"),
    (155, (6, 1, 1), "sym(d2*c4):(a*b)"),
    (156, (6, 1, 1), "c3^2:(a*b)"),
    (157, (6, 1, 1), "tr(H x c5)|(a x b)"),
    (158, (6, 1, 1), "(d2 x c4)|(a x b)"),
    (159, (6, 1, 1), "a:sym(H:H.d2^2):b"),
    (160, (6, 2, 1), "v5.a.(H|(a x b))"),
    (161, (6, 1, 2), "v5.b.(H|(a x b))"),
    (162, (6, 1, 2), "(c33:b).a.(c33:b)"),
    (163, (6, 2, 1), "(c33:a).b.(c33:a)"),
    (164, (6, 1, 2), "b:((H x c5)|(a x b))"),
    (165, (6, 2, 1), "a:((H x c5)|(a x b))"),
    (166, (7, 1, 1), "d2:((a x b).v5)"),
    (167, (7, 1, 1), "(c3 x c4)|(a x b)"),
    (168, (7, 1, 1), "sym(c4*c3):(a*b)"),
    (169, (7, 1, 1), "sym(d2^2*c3):(a*b)"),
    (170, (8, 1, 1), "v8a.eps(a*b)"),
    (171, (8, 1, 1), "c4^2:(a*b)"),
    (172, (9, 1, 1), "v9a.eps(a*b)"),
    (173, (9, 1, 1), "v9b.eps(a*b)"),
    (174, (9, 1, 1), "(d2^2*c5):sym(a*b)"),
];

/// Simple invariants of `H` and of the deviators.
const SIMPLE: &[(&str, MultiDegree, &str)] = &[
    ("tr(a^2)", (0, 2, 0), "tr(a^2)"),
    ("tr(a^3)", (0, 3, 0), "tr(a^3)"),
    ("tr(b^2)", (0, 0, 2), "tr(b^2)"),
    ("tr(b^3)", (0, 0, 3), "tr(b^3)"),
    ("I2", (2, 0, 0), "tr(d2)"),
    ("I3", (3, 0, 0), "tr(d3)"),
    ("I4", (4, 0, 0), "tr(d2^2)"),
    ("I5", (5, 0, 0), "tr(d2*d3)"),
    ("I6", (6, 0, 0), "tr(d2^3)"),
    ("I7", (7, 0, 0), "tr(d2^2*d3)"),
    ("I8", (8, 0, 0), "tr(d2*d3^2)"),
    ("I9", (9, 0, 0), "tr(d3^3)"),
    ("I10", (10, 0, 0), "tr(d2^2*d3^2)"),
];

const JOINT_AB: &[(&str, MultiDegree, &str)] = &[
    ("tr(ab)", (0, 1, 1), "tr(a*b)"),
    ("tr(a^2b)", (0, 2, 1), "tr(a^2*b)"),
    ("tr(ab^2)", (0, 1, 2), "tr(a*b^2)"),
    ("tr(a^2b^2)", (0, 2, 2), "tr(a^2*b^2)"),
];

/// One generator: its label, multidegree in `(H, a, b)` and value.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariant {
    pub label: String,
    pub multidegree: MultiDegree,
    pub value: f64,
}

impl Invariant {
    /// Total polynomial degree in `E`; `λ` and `μ` count as degree one.
    pub fn degree(&self) -> usize {
        let (h, a, b) = self.multidegree;
        if h + a + b == 0 {
            1
        } else {
            h + a + b
        }
    }
}

/// The 297 generators: `λ`, `μ`, 13 further simple invariants, 4 joint
/// invariants of `(a, b)`, `j_a1…j_a52`, `j_b1…j_b52` and `J_i1…J_i174`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrityBasis297 {
    pub entries: Vec<Invariant>,
}

impl IntegrityBasis297 {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.label == label).map(|e| e.value)
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }
}

struct Compiled {
    helpers: Vec<Def>,
    simple: Vec<Def>,
    ha: Vec<Def>,
    hab: Vec<Def>,
}

fn compile_rows<'a>(rows: impl Iterator<Item = &'a str>) -> Vec<Def> {
    let pairs: Vec<(&str, &str)> = rows.map(|s| ("_", s)).collect();
    expr::compile(&pairs).expect("invariant formulas parse")
}

fn compiled() -> &'static Compiled {
    static C: OnceLock<Compiled> = OnceLock::new();
    C.get_or_init(|| Compiled {
        helpers: expr::compile(HELPERS).expect("helper formulas parse"),
        simple: compile_rows(SIMPLE.iter().chain(JOINT_AB).map(|r| r.2)),
        ha: compile_rows(JOINT_HA.iter().map(|r| r.2)),
        hab: compile_rows(JOINT_HAB.iter().map(|r| r.2)),
    })
}

fn scalars(defs: &[Def], env: &Env) -> Vec<f64> {
    defs.iter()
        .map(|d| {
            let v = expr::eval(&d.node, env).expect("invariant formula evaluates");
            debug_assert_eq!(v.order(), 0);
            v.to_scalar()
        })
        .collect()
}

pub fn integrity_basis(e: &ElasticityTensor) -> IntegrityBasis297 {
    integrity_basis_parts(&e.decompose())
}

fn bind(env: &mut Env, name: &str, m: &Matrix3<f64>) {
    env.insert(name.into(), Tensor::from_matrix(m));
}

/// Environment with `H`, `a`, `b`, `q` and every helper covariant bound, for
/// evaluating further formulas.
pub fn invariant_env(dec: &HarmonicDecomposition) -> Env {
    let mut env = base_env(dec.h.as_sym()).expect("order 4 fits");
    expr::run(&compiled().helpers, &mut env).expect("helper formulas evaluate");
    bind(&mut env, "a", &dec.a);
    bind(&mut env, "b", &dec.b);
    env
}

/// The 297 invariants evaluated directly on a harmonic decomposition.
pub fn integrity_basis_parts(dec: &HarmonicDecomposition) -> IntegrityBasis297 {
    let c = compiled();
    let env = invariant_env(dec);

    let mut entries = Vec::with_capacity(297);
    let mut push = |label: String, multidegree: MultiDegree, value: f64| {
        entries.push(Invariant { label, multidegree, value });
    };
    push("lambda".into(), (0, 0, 0), dec.lambda);
    push("mu".into(), (0, 0, 0), dec.mu);
    let rows = SIMPLE.iter().chain(JOINT_AB);
    for (row, v) in rows.zip(scalars(&c.simple, &env)) {
        push(row.0.into(), row.1, v);
    }
    for (row, v) in JOINT_HA.iter().zip(scalars(&c.ha, &env)) {
        push(format!("j_a{}", row.0), (row.1 .0, row.1 .1, 0), v);
    }
    let mut env_b = env.clone();
    bind(&mut env_b, "a", &dec.b);
    for (row, v) in JOINT_HA.iter().zip(scalars(&c.ha, &env_b)) {
        push(format!("j_b{}", row.0), (row.1 .0, 0, row.1 .1), v);
    }
    for (row, v) in JOINT_HAB.iter().zip(scalars(&c.hab, &env)) {
        push(format!("J_i{}", row.0), row.1, v);
    }
    IntegrityBasis297 { entries }
}
