//! Rule engine turning known existence theorems into verdicts, plus survey
//! enumeration, the spec document format and report rendering.

pub mod document;
pub mod emit;
pub mod survey;

use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::admissible::{csc_solve, data_from_spec_strict, extremal_polynomial, AdmissibleError, CscVerdict};
use crate::einstein::{se_check, SeStatus};
use crate::exactalg::{int, Polynomial, Rational};
use crate::model::{BaseFactor, FiberJoinSpec};

pub use document::SpecDocument;
pub use survey::{survey, SurveyBounds, SurveyEntry, SurveyError, SurveyMetadata, SurveyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    ExtremalRegularRay,
    ExtremalOpenSet,
    CscRegularRay,
    CscRayInCone,
    SeExists,
    SeObstructed,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::ExtremalRegularRay => "extremal_regular_ray",
            VerdictKind::ExtremalOpenSet => "extremal_open_set",
            VerdictKind::CscRegularRay => "csc_regular_ray",
            VerdictKind::CscRayInCone => "csc_ray_in_cone",
            VerdictKind::SeExists => "se_exists",
            VerdictKind::SeObstructed => "se_obstructed",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }

    /// Extremal and CSC kinds answer the existence question for the cone.
    pub fn is_extremal_or_csc(self) -> bool {
        matches!(
            self,
            VerdictKind::ExtremalRegularRay
                | VerdictKind::ExtremalOpenSet
                | VerdictKind::CscRegularRay
                | VerdictKind::CscRayInCone
        )
    }
}

/// Data computed by a rule that lets a reader re-check the conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Csc { s: Rational, q: Polynomial },
    Extremal { f: Polynomial },
    SeCount { count: u128 },
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Witness::Csc { s: value, q } => {
                let mut st = s.serialize_struct("Witness", 2)?;
                st.serialize_field("s", &emit::rational(value))?;
                st.serialize_field("Q", &emit::polynomial(q))?;
                st.end()
            }
            Witness::Extremal { f } => {
                let mut st = s.serialize_struct("Witness", 1)?;
                st.serialize_field("F_extr", &emit::polynomial(f))?;
                st.end()
            }
            Witness::SeCount { count } => {
                let mut st = s.serialize_struct("Witness", 1)?;
                st.serialize_field("partition_count", count)?;
                st.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(rename = "rule")]
    pub rule_id: &'static str,
    pub citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// The conclusion extends to an open set of extremal structures in the cone.
    pub open_set: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

type RuleFn = fn(&Rule, &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError>;

/// A classification rule: its predicate reads only the spec data.
pub struct Rule {
    pub id: &'static str,
    pub citation: &'static str,
    eval: RuleFn,
}

impl Rule {
    pub fn evaluate(&self, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
        (self.eval)(self, spec)
    }

    fn verdict(&self, kind: VerdictKind, open_set: bool) -> Verdict {
        Verdict { kind, rule_id: self.id, citation: self.citation, witness: None, open_set, note: None }
    }
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rule").field("id", &self.id).finish()
    }
}

pub const INCONCLUSIVE_RULE: &str = "none";

pub static RULES: [Rule; 9] = [
    Rule {
        id: "R1",
        citation: "colinear join with d = 1 over a CSC base: the spherical subcone contains a CSC ray, \
                   and is exhausted by extremal metrics when the base scalar curvature is non-negative",
        eval: rule_colinear_rank_two,
    },
    Rule {
        id: "R2",
        citation: "colinear join over an extremal base: the quasi-regular Reeb field with weights w is extremal",
        eval: rule_colinear_quasi_regular,
    },
    Rule {
        id: "R3",
        citation: "super admissible join over a product of non-negative CSC factors: \
                   the regular Reeb field has an extremal representative",
        eval: rule_super_admissible,
    },
    Rule {
        id: "R4",
        citation: "join over CP^1 x Sigma_g: extremal regular ray for g <= 1 and any K and split, \
                   and for g > 1 with d0 = dinf = 1 and blocks (2, g), (1, 1)",
        eval: rule_cp1_times_surface,
    },
    Rule {
        id: "R5",
        citation: "colinear two-block join over one surface: extremal regular ray when g <= 1 \
                   or -d0(d0+1) <= 2(1-g)/(b1-b2) <= dinf(dinf+1)",
        eval: rule_surface_two_block,
    },
    Rule {
        id: "R6",
        citation: "colinear join over CP^1 with d = 2: every Kaehler class of the quotient is extremal",
        eval: rule_cp1_rank_three,
    },
    Rule {
        id: "R7",
        citation: "admissible d = 1 join over two surfaces: an affine solution s of the CSC equations \
                   with Q > 0 on (-1, 1) gives a CSC regular ray",
        eval: rule_csc,
    },
    Rule {
        id: "R8",
        citation: "admissible d = 1 join: an extremal polynomial positive on (-1, 1) gives an extremal regular ray",
        eval: rule_extremal,
    },
    Rule {
        id: "R9",
        citation: "Sasaki-Einstein obstructions from c1, the Fano index and the split; \
                   existence by partition count for colinear joins over CP^n and for S3 * S3 * S3",
        eval: rule_se,
    },
];

const INCONCLUSIVE_CITATION: &str = "no rule decides extremal or CSC existence for this spec";

/// Runs every rule in order. When none of them settles extremal or CSC
/// existence an `inconclusive` verdict is appended.
pub fn classify(spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let mut out = Vec::new();
    for rule in &RULES {
        out.extend(rule.evaluate(spec)?);
    }
    if !out.iter().any(|v| v.kind.is_extremal_or_csc()) {
        out.push(Verdict {
            kind: VerdictKind::Inconclusive,
            rule_id: INCONCLUSIVE_RULE,
            citation: INCONCLUSIVE_CITATION,
            witness: None,
            open_set: false,
            note: None,
        });
    }
    Ok(out)
}

/// Sign of the scalar curvature of the product CSC metric in the class with
/// coefficients `class` on the factor generators.
fn base_scalar_curvature_sign(base: &[BaseFactor], class: &[i64]) -> i8 {
    let total: Rational = base
        .iter()
        .zip(class)
        .map(|(f, &c)| int(i64::from(f.complex_dim()) * f.c1()) / int(c))
        .sum();
    if total.is_zero() {
        0
    } else if total.is_positive() {
        1
    } else {
        -1
    }
}

fn rule_colinear_rank_two(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    if !spec.is_colinear() || spec.d() != 1 {
        return Ok(vec![]);
    }
    let mut out = vec![rule.verdict(VerdictKind::CscRayInCone, true)];
    let data = spec.regular_join_data().expect("colinear");
    if base_scalar_curvature_sign(spec.base(), &data.primitive) >= 0 {
        let mut v = rule.verdict(VerdictKind::ExtremalOpenSet, true);
        v.note = Some("spherical subcone exhausted by extremal metrics".to_string());
        out.push(v);
    }
    Ok(out)
}

fn rule_colinear_quasi_regular(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let Ok(data) = spec.regular_join_data() else {
        return Ok(vec![]);
    };
    let regular = data.w.iter().all(|&w| w == 1);
    let kind = if regular { VerdictKind::ExtremalRegularRay } else { VerdictKind::ExtremalOpenSet };
    let mut v = rule.verdict(kind, true);
    let w: Vec<String> = data.w.iter().map(ToString::to_string).collect();
    v.note = Some(format!("Reeb weights ({})", w.join(", ")));
    Ok(vec![v])
}

fn rule_super_admissible(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let Some((w0, winf)) = spec.blocks() else {
        return Ok(vec![]);
    };
    let base = spec.base();
    let all_differ = w0.iter().zip(winf).all(|(a, b)| a != b);
    let non_negative = base.iter().all(|f| f.c1() >= 0);
    // b2 = 1 for every supported factor; b1 may be nonzero on one factor only.
    let with_b1 = base.iter().filter(|f| f.surface_genus().is_some_and(|g| g > 0)).count();
    if all_differ && non_negative && with_b1 <= 1 {
        Ok(vec![rule.verdict(VerdictKind::ExtremalRegularRay, true)])
    } else {
        Ok(vec![])
    }
}

fn rule_cp1_times_surface(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let base = spec.base();
    if base.len() != 2 || spec.split().is_none() {
        return Ok(vec![]);
    }
    let Some(cp1) = base.iter().position(BaseFactor::is_cp1) else {
        return Ok(vec![]);
    };
    let other = 1 - cp1;
    let Some(g) = base[other].surface_genus() else {
        return Ok(vec![]);
    };
    let fires = if g <= 1 {
        true
    } else {
        let (w0, winf) = spec.blocks().expect("split present");
        let want = |w: &[i64], a: i64, b: i64| w[cp1] == a && w[other] == b;
        let g = i64::from(g);
        spec.split() == Some((1, 1))
            && ((want(w0, 2, g) && want(winf, 1, 1)) || (want(w0, 1, 1) && want(winf, 2, g)))
    };
    Ok(if fires { vec![rule.verdict(VerdictKind::ExtremalRegularRay, true)] } else { vec![] })
}

fn rule_surface_two_block(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let (Some((d0, dinf)), Some((w0, winf)), [factor]) = (spec.split(), spec.blocks(), spec.base()) else {
        return Ok(vec![]);
    };
    let Some(g) = factor.surface_genus() else {
        return Ok(vec![]);
    };
    let fires = if g <= 1 {
        true
    } else if w0[0] == winf[0] {
        false
    } else {
        let x = int(2 * (1 - i64::from(g))) / int(w0[0] - winf[0]);
        let (d0, dinf) = (i64::from(d0), i64::from(dinf));
        int(-d0 * (d0 + 1)) <= x && x <= int(dinf * (dinf + 1))
    };
    Ok(if fires { vec![rule.verdict(VerdictKind::ExtremalRegularRay, true)] } else { vec![] })
}

fn rule_cp1_rank_three(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let fires = matches!(spec.base(), [f] if f.is_cp1()) && spec.d() == 2;
    Ok(if fires { vec![rule.verdict(VerdictKind::ExtremalRegularRay, true)] } else { vec![] })
}

/// Admissible data for the d = 1 computational rules; `None` when the rule
/// does not apply.
fn rank_two_data(spec: &FiberJoinSpec) -> Option<crate::admissible::AdmissibleData> {
    if spec.d() != 1 {
        return None;
    }
    data_from_spec_strict(spec).ok()
}

fn rule_csc(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let two_surfaces = spec.base().len() == 2 && spec.base().iter().all(|f| f.complex_dim() == 1);
    if !two_surfaces {
        return Ok(vec![]);
    }
    let Some(data) = rank_two_data(spec) else {
        return Ok(vec![]);
    };
    let res = csc_solve(&data)?;
    if res.verdict != CscVerdict::Csc {
        return Ok(vec![]);
    }
    let mut v = rule.verdict(VerdictKind::CscRegularRay, true);
    v.witness = Some(Witness::Csc { s: res.s.expect("csc has s"), q: res.q.expect("csc has Q") });
    Ok(vec![v])
}

fn rule_extremal(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let Some(data) = rank_two_data(spec) else {
        return Ok(vec![]);
    };
    let res = extremal_polynomial(&data)?;
    if !res.positive {
        return Ok(vec![]);
    }
    let mut v = rule.verdict(VerdictKind::ExtremalRegularRay, true);
    v.witness = Some(Witness::Extremal { f: res.f });
    Ok(vec![v])
}

fn rule_se(rule: &Rule, spec: &FiberJoinSpec) -> Result<Vec<Verdict>, ClassifyError> {
    let se = se_check(spec);
    let mut v = match se.status {
        SeStatus::Obstructed => rule.verdict(VerdictKind::SeObstructed, false),
        SeStatus::Exists => {
            let mut v = rule.verdict(VerdictKind::SeExists, false);
            v.witness = se.count.map(|count| Witness::SeCount { count });
            v
        }
        SeStatus::NecessaryConditionsPass => return Ok(vec![]),
    };
    v.note = Some(se.reason);
    Ok(vec![v])
}
