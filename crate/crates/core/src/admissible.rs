//! Admissible data, the extremal polynomial and the two-factor CSC test.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{int, solve_linear, strictly_positive_on, ExactError, Polynomial, Rational};
use crate::model::FiberJoinSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibleError {
    #[error("spec is not admissible: {0}")]
    NotAdmissible(&'static str),
    #[error("factor {0} has equal entries in both blocks")]
    DegenerateFactor(usize),
    #[error("base factors {0} and {1} share the same r")]
    RepeatedR(usize, usize),
    #[error("entry {0} violates the admissible data invariants")]
    InvalidEntry(usize),
    #[error("interpolation nodes -1/r repeat")]
    RepeatedInterpolationNode,
    #[error("extremal system is singular")]
    SingularSystem,
    #[error("r1 = r2; not a genuine two-factor case")]
    EqualR,
    #[error("hypothesis s1 + s2 = 0 and r1 + r2 = 0 not met")]
    HypothesisNotMet,
    #[error("operation needs {0}")]
    WrongShape(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryLabel {
    Base(usize),
    FiberZero,
    FiberInfinity,
}

/// One index of the extended index set: complex dimension `d`, curvature
/// parameter `s` and class parameter `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleEntry {
    pub label: EntryLabel,
    pub d: u32,
    pub s: Rational,
    pub r: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleData {
    entries: Vec<AdmissibleEntry>,
}

impl AdmissibleData {
    /// Checks `0 < |r| <= 1`, that `r = ±1` only on the matching fiber entry,
    /// and the fixed fiber values. Repeated `r` is left to the callers.
    pub fn new(entries: Vec<AdmissibleEntry>) -> Result<Self, AdmissibleError> {
        let one = Rational::one();
        for (i, e) in entries.iter().enumerate() {
            let ok = e.d >= 1
                && match e.label {
                    EntryLabel::Base(_) => !e.r.is_zero() && e.r.abs() < one,
                    EntryLabel::FiberZero => e.r == one && e.s == int(i64::from(e.d) + 1),
                    EntryLabel::FiberInfinity => e.r == -&one && e.s == -int(i64::from(e.d) + 1),
                };
            if !ok {
                return Err(AdmissibleError::InvalidEntry(i));
            }
        }
        Ok(AdmissibleData { entries })
    }

    /// Base entries `(d_a, s_a, r_a)` plus fiber entries for positive `d0`, `dinf`.
    pub fn from_parts(base: Vec<(u32, Rational, Rational)>, d0: u32, dinf: u32) -> Result<Self, AdmissibleError> {
        let mut entries: Vec<AdmissibleEntry> = base
            .into_iter()
            .enumerate()
            .map(|(a, (d, s, r))| AdmissibleEntry { label: EntryLabel::Base(a), d, s, r })
            .collect();
        if d0 > 0 {
            entries.push(AdmissibleEntry { label: EntryLabel::FiberZero, d: d0, s: int(i64::from(d0) + 1), r: int(1) });
        }
        if dinf > 0 {
            entries.push(AdmissibleEntry {
                label: EntryLabel::FiberInfinity,
                d: dinf,
                s: -int(i64::from(dinf) + 1),
                r: int(-1),
            });
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[AdmissibleEntry] {
        &self.entries
    }

    pub fn base_entries(&self) -> impl Iterator<Item = &AdmissibleEntry> {
        self.entries.iter().filter(|e| matches!(e.label, EntryLabel::Base(_)))
    }

    pub fn has_fiber_entries(&self) -> bool {
        self.entries.len() != self.base_entries().count()
    }

    /// `Π (1 + r_a z)^{d_a}`.
    pub fn p_c(&self) -> Polynomial {
        self.product_with(|d| d)
    }

    /// `Π (1 + r_a z)^{d_a - 1}`, the factor multiplying `P` in `F''`.
    pub fn weight(&self) -> Polynomial {
        self.product_with(|d| d - 1)
    }

    fn product_with(&self, exp: impl Fn(u32) -> u32) -> Polynomial {
        self.entries.iter().fold(Polynomial::one(), |acc, e| {
            &acc * &Polynomial::linear(int(1), e.r.clone()).pow(exp(e.d))
        })
    }
}

/// Admissible data of a spec. Factors with equal entries in both blocks are
/// dropped from the index set.
pub fn data_from_spec(spec: &FiberJoinSpec) -> Result<AdmissibleData, AdmissibleError> {
    build_data(spec, false)
}

/// Like [`data_from_spec`] but every factor must differ between the blocks.
pub fn data_from_spec_strict(spec: &FiberJoinSpec) -> Result<AdmissibleData, AdmissibleError> {
    build_data(spec, true)
}

fn build_data(spec: &FiberJoinSpec, strict: bool) -> Result<AdmissibleData, AdmissibleError> {
    let (d0, dinf) = spec.split().ok_or(AdmissibleError::NotAdmissible("no block split"))?;
    let (w0, winf) = spec.blocks().ok_or(AdmissibleError::NotAdmissible("no block split"))?;
    let mut base = Vec::new();
    let mut labels = Vec::new();
    for (a, f) in spec.base().iter().enumerate() {
        let diff = w0[a] - winf[a];
        if diff == 0 {
            if strict {
                return Err(AdmissibleError::DegenerateFactor(a));
            }
            continue;
        }
        let s = Rational::new(BigInt::from(f.c1()), BigInt::from(diff));
        let r = Rational::new(BigInt::from(diff), BigInt::from(w0[a] + winf[a]));
        base.push((f.complex_dim(), s, r));
        labels.push(a);
    }
    if base.is_empty() {
        return Err(AdmissibleError::NotAdmissible("all factors agree between the blocks"));
    }
    for i in 0..base.len() {
        for j in i + 1..base.len() {
            if base[i].2 == base[j].2 {
                return Err(AdmissibleError::RepeatedR(labels[i], labels[j]));
            }
        }
    }
    let mut data = AdmissibleData::from_parts(base, d0, dinf)?;
    for e in data.entries.iter_mut() {
        if let EntryLabel::Base(i) = e.label {
            e.label = EntryLabel::Base(labels[i]);
        }
    }
    Ok(data)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalResult {
    pub f: Polynomial,
    pub p: Polynomial,
    pub p_c: Polynomial,
    pub weight: Polynomial,
    pub positive: bool,
}

/// Solves for the extremal profile `F` with `F'' = weight * P`, the
/// interpolation values of `P` at `-1/r_a`, and the boundary conditions
/// `F(±1) = 0`, `F'(±1) = ∓2 p_c(±1)`.
pub fn extremal_polynomial(data: &AdmissibleData) -> Result<ExtremalResult, AdmissibleError> {
    let entries = data.entries();
    let m = entries.len();
    let nodes: Vec<Rational> = entries.iter().map(|e| -e.r.recip()).collect();
    for i in 0..m {
        if nodes[i + 1..].contains(&nodes[i]) {
            return Err(AdmissibleError::RepeatedInterpolationNode);
        }
    }
    let weight = data.weight();
    let p_c = data.p_c();
    let np = m + 2;
    let basis: Vec<Polynomial> = (0..np)
        .map(|i| (&weight * &Polynomial::monomial(int(1), i)).antiderivative().antiderivative())
        .collect();
    let (one, minus_one) = (int(1), int(-1));

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(np + 2);
    let mut rhs = Vec::with_capacity(np + 2);
    for (a, e) in entries.iter().enumerate() {
        let mut row: Vec<Rational> = (0..np).map(|i| power(&nodes[a], i)).collect();
        row.extend([Rational::zero(), Rational::zero()]);
        rows.push(row);
        let prod: Rational = entries
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != a)
            .map(|(_, o)| int(1) - &o.r / &e.r)
            .product();
        rhs.push(int(2 * i64::from(e.d)) * &e.s * &e.r * prod);
    }
    // unknown order: p_0..p_{np-1}, c0, c1
    for (x, c1_coeff) in [(&one, int(1)), (&minus_one, int(-1))] {
        let mut row: Vec<Rational> = basis.iter().map(|g| g.eval(x)).collect();
        row.extend([int(1), c1_coeff]);
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for (x, sign) in [(&one, int(-2)), (&minus_one, int(2))] {
        let mut row: Vec<Rational> = basis.iter().map(|g| g.derivative().eval(x)).collect();
        row.extend([Rational::zero(), int(1)]);
        rows.push(row);
        rhs.push(sign * p_c.eval(x));
    }

    let sol = solve_linear(&rows, &rhs).map_err(|e| match e {
        ExactError::SingularMatrix => AdmissibleError::SingularSystem,
        _ => unreachable!("system is square by construction"),
    })?;
    let p = Polynomial::new(sol[..np].to_vec());
    let f = &(&weight * &p).antiderivative().antiderivative() + &Polynomial::linear(sol[np].clone(), sol[np + 1].clone());

    debug_assert!(f.eval(&one).is_zero() && f.eval(&minus_one).is_zero());
    debug_assert_eq!(f.derivative().eval(&one), int(-2) * p_c.eval(&one));
    debug_assert_eq!(f.derivative().eval(&minus_one), int(2) * p_c.eval(&minus_one));

    let positive = strictly_positive_on(&f, &minus_one, &one).unwrap_or(false);
    Ok(ExtremalResult { f, p, p_c, weight, positive })
}

fn power(x: &Rational, i: usize) -> Rational {
    (0..i).fold(int(1), |acc, _| acc * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CscVerdict {
    Csc,
    PositivityFails,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CscResult {
    pub s: Option<Rational>,
    pub q: Option<Polynomial>,
    pub verdict: CscVerdict,
}

fn two_base_entries(data: &AdmissibleData) -> Result<(&AdmissibleEntry, &AdmissibleEntry), AdmissibleError> {
    match data.entries() {
        [a, b] if !data.has_fiber_entries() => Ok((a, b)),
        _ => Err(AdmissibleError::WrongShape("exactly two base entries and no fiber entries")),
    }
}

/// Value of `s` making the first CSC equation hold; the second follows by
/// swapping the factors.
fn solve_affine(s1: &Rational, r1: &Rational, r2: &Rational) -> Rational {
    let num = int(3) * r2 + int(2) * r1 - r1 * r1 * r2 - r1 * s1 * (r1 - r2);
    let den = r2 * (int(3) - r1 * r1);
    num / den
}

/// Left-hand side of the CSC equation for factor 1; zero exactly at a solution.
pub fn csc_residual(s1: &Rational, r1: &Rational, r2: &Rational, s: &Rational) -> Rational {
    r1 * (s1 * (r1 - r2) - int(2) + (int(1) - s) * r1 * r2) + int(3) * (s - int(1)) * r2
}

/// `(1 + r1 z)(1 + r2 z) + (1 - s/2) r1 r2 (1 - z²)`.
pub fn q_polynomial(r1: &Rational, r2: &Rational, s: &Rational) -> Polynomial {
    let lin = &Polynomial::linear(int(1), r1.clone()) * &Polynomial::linear(int(1), r2.clone());
    let c = (int(1) - s / int(2)) * r1 * r2;
    &lin + &Polynomial::from_i64s(&[1, 0, -1]).scale(&c)
}

pub fn csc_solve(data: &AdmissibleData) -> Result<CscResult, AdmissibleError> {
    let (e1, e2) = two_base_entries(data)?;
    if e1.r == e2.r {
        return Err(AdmissibleError::EqualR);
    }
    let s_a = solve_affine(&e1.s, &e1.r, &e2.r);
    let s_b = solve_affine(&e2.s, &e2.r, &e1.r);
    if s_a != s_b {
        return Ok(CscResult { s: None, q: None, verdict: CscVerdict::Inconsistent });
    }
    let s = s_a;
    let q = q_polynomial(&e1.r, &e2.r, &s);
    let positive = if !s.is_negative() {
        debug_assert!(strictly_positive_on(&q, &int(-1), &int(1)).unwrap_or(false));
        true
    } else {
        strictly_positive_on(&q, &int(-1), &int(1)).unwrap_or(false)
    };
    let verdict = if positive { CscVerdict::Csc } else { CscVerdict::PositivityFails };
    Ok(CscResult { s: Some(s), q: Some(q), verdict })
}

/// Closed-form solution under `s1 + s2 = 0`, `r1 + r2 = 0`.
pub fn csc_ansatz(data: &AdmissibleData) -> Result<Rational, AdmissibleError> {
    let (e1, e2) = two_base_entries(data)?;
    if !(&e1.s + &e2.s).is_zero() || !(&e1.r + &e2.r).is_zero() {
        return Err(AdmissibleError::HypothesisNotMet);
    }
    let r1 = &e1.r;
    Ok((int(1) - r1 * r1 + int(2) * &e1.s * r1) / (int(3) - r1 * r1))
}

/// `floor((2g - 3 + sqrt(4g² - 8g + 5)) / 2)` in exact integer arithmetic.
pub fn genus_threshold(g: u64) -> i64 {
    let g = i128::from(g);
    let disc = 4 * g * g - 8 * g + 5;
    let root = disc.sqrt();
    // (a + sqrt(disc)) / 2 and (a + floor(sqrt(disc))) / 2 share a floor.
    let value = Integer::div_floor(&(2 * g - 3 + root), &2);
    i64::try_from(value).expect("threshold fits in i64")
}

/// Class parameters `r_a` of the regular quotient for a d = 1 join. In the
/// colinear case all factors share one value, returned once.
pub fn quotient_class_parameters(spec: &FiberJoinSpec) -> Result<Vec<Rational>, AdmissibleError> {
    if spec.d() != 1 || spec.split() != Some((0, 0)) {
        return Err(AdmissibleError::WrongShape("d = 1 with split (0, 0)"));
    }
    if spec.is_colinear() {
        let data = spec.regular_join_data().expect("colinear");
        let (b1, b2) = (data.multiples[0], data.multiples[1]);
        if b1 == b2 {
            return Err(AdmissibleError::NotAdmissible("all factors agree between the blocks"));
        }
        return Ok(vec![Rational::new(BigInt::from(b1 - b2), BigInt::from(b1 + b2))]);
    }
    let data = data_from_spec(spec)?;
    Ok(data.base_entries().map(|e| e.r.clone()).collect())
}
