//! Characteristic classes and cohomology of fiber joins.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::model::{BaseFactor, FiberJoinSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("c_{k} is only computed for 2k < 2d+1 (d = {d})")]
    OutOfValidityRange { k: u32, d: u32 },
    #[error("unsupported base for this invariant: {0}")]
    UnsupportedBase(&'static str),
    #[error("family parameters need k > l >= 1, got ({k}, {l})")]
    InvalidFamily { k: i64, l: i64 },
}

/// Coefficients on the factor generators of H²(N, ℤ).
pub type ClassVector = Vec<i64>;

/// `c1(N) - Σ_j [ω_j]`.
pub fn c1_contact(spec: &FiberJoinSpec) -> ClassVector {
    spec.base()
        .iter()
        .enumerate()
        .map(|(a, f)| f.c1() - spec.rows().iter().map(|r| r[a]).sum::<i64>())
        .collect()
}

/// Element of the even cohomology of the base, written in monomials of the
/// factor generators. Exponent `e_a` never exceeds the complex dimension of
/// factor `a`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaseClass {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl BaseClass {
    fn one(m: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; m], BigInt::one());
        BaseClass { terms }
    }

    fn insert(&mut self, mono: Vec<u32>, c: BigInt) {
        let slot = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn mul(&self, other: &BaseClass, dims: &[u32]) -> BaseClass {
        let mut out = BaseClass::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if mono.iter().zip(dims).all(|(e, d)| e <= d) {
                    out.insert(mono, ca * cb);
                }
            }
        }
        out
    }

    fn add(&self, other: &BaseClass) -> BaseClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    /// Homogeneous part of complex degree `k`.
    fn degree_part(&self, k: u32) -> BaseClass {
        BaseClass {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a single monomial.
    pub fn coefficient(&self, mono: &[u32]) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, e)| if *e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                    .collect();
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for BaseClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            monomial: &'a [u32],
            coefficient: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| Term { monomial: m, coefficient: c.to_string() })
            .collect();
        terms.serialize(s)
    }
}

fn dims(spec: &FiberJoinSpec) -> Vec<u32> {
    spec.base().iter().map(BaseFactor::complex_dim).collect()
}

fn generator(m: usize, a: usize, coeff: i64) -> BaseClass {
    let mut mono = vec![0; m];
    mono[a] = 1;
    let mut c = BaseClass::default();
    c.insert(mono, BigInt::from(coeff));
    c
}

/// Total Chern class of the base.
fn total_chern_base(spec: &FiberJoinSpec) -> BaseClass {
    let ds = dims(spec);
    let m = ds.len();
    let mut total = BaseClass::one(m);
    for (a, f) in spec.base().iter().enumerate() {
        let factor = match f {
            BaseFactor::ProjectiveSpace { n } => {
                let lin = BaseClass::one(m).add(&generator(m, a, 1));
                (0..=*n).fold(BaseClass::one(m), |acc, _| acc.mul(&lin, &ds))
            }
            _ => BaseClass::one(m).add(&generator(m, a, f.c1())),
        };
        total = total.mul(&factor, &ds);
    }
    total
}

/// `σ_k(-ω_1, ..., -ω_{d+1}) + c_k(N)` for `2k < 2d+1`.
pub fn chern_k(spec: &FiberJoinSpec, k: u32) -> Result<BaseClass, TopologyError> {
    let d = spec.d();
    // 2k >= 2d + 1 for integers
    if k > d {
        return Err(TopologyError::OutOfValidityRange { k, d });
    }
    let ds = dims(spec);
    let m = ds.len();
    // Π_j (1 - ω_j), whose degree-k part is σ_k(-ω).
    let mut prod = BaseClass::one(m);
    for row in spec.rows() {
        let mut factor = BaseClass::one(m);
        for (a, &v) in row.iter().enumerate() {
            factor = factor.add(&generator(m, a, -v));
        }
        prod = prod.mul(&factor, &ds);
    }
    Ok(prod.degree_part(k).add(&total_chern_base(spec).degree_part(k)))
}

fn two_surfaces(spec: &FiberJoinSpec) -> Option<(u32, u32)> {
    match spec.base() {
        [a, b] if a.complex_dim() == 1 && b.complex_dim() == 1 => Some((a.surface_genus()?, b.surface_genus()?)),
        _ => None,
    }
}

/// Euler class of the sphere bundle over a product of two surfaces, as a
/// multiple of the top class.
pub fn euler_class(spec: &FiberJoinSpec) -> Result<i64, TopologyError> {
    two_surfaces(spec).ok_or(TopologyError::UnsupportedBase("euler class needs two surface factors"))?;
    if spec.d() > 1 {
        return Ok(0);
    }
    let r = spec.rows();
    Ok(r[0][0] * r[1][1] + r[0][1] * r[1][0])
}

/// First Pontryagin class over a product of two surfaces, as a multiple of
/// the top class of the base.
pub fn p1(spec: &FiberJoinSpec) -> Result<i64, TopologyError> {
    two_surfaces(spec).ok_or(TopologyError::UnsupportedBase("p1 needs two surface factors"))?;
    let r = spec.rows();
    if spec.d() == 1 {
        return Ok(2 * (r[0][0] - r[1][0]) * (r[0][1] - r[1][1]));
    }
    let c1 = c1_contact(spec);
    let c2 = chern_k(spec, 2)?.coefficient(&[1, 1]);
    let c2 = i64::try_from(c2).map_err(|_| TopologyError::UnsupportedBase("p1 exceeds i64"))?;
    Ok(2 * c1[0] * c1[1] - 2 * c2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinStatus {
    Spin,
    NonSpin,
}

/// Spin iff the mod-2 reduction of `c1_contact` vanishes.
pub fn spin_status(spec: &FiberJoinSpec) -> SpinStatus {
    if c1_contact(spec).iter().all(|c| c % 2 == 0) {
        SpinStatus::Spin
    } else {
        SpinStatus::NonSpin
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: u32,
    pub rank: u64,
    pub torsion: Vec<u64>,
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        write!(f, "H^{} = {}", self.degree, parts.join(" + "))
    }
}

/// Integral cohomology groups in every degree `0..=dim M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub groups: Vec<CohomologyGroup>,
}

impl CohomologyTable {
    pub fn group(&self, p: u32) -> Option<&CohomologyGroup> {
        self.groups.get(p as usize)
    }

    pub fn dimension(&self) -> u32 {
        self.groups.len() as u32 - 1
    }
}

pub fn cohomology_table(spec: &FiberJoinSpec) -> Result<CohomologyTable, TopologyError> {
    let (g1, g2) = two_surfaces(spec).ok_or(TopologyError::UnsupportedBase("cohomology table needs two surface factors"))?;
    let (g1, g2) = (u64::from(g1), u64::from(g2));
    let odd = 2 * g1 + 2 * g2;
    let mid = 4 * g1 * g2 + 2;
    let d = spec.d();
    let groups = if d == 1 {
        let e = euler_class(spec)? as u64;
        let ranks = [1, odd, mid, odd, odd, mid, odd, 1];
        ranks
            .iter()
            .enumerate()
            .map(|(p, &rank)| CohomologyGroup {
                degree: p as u32,
                rank,
                torsion: if p == 4 && e != 1 { vec![e] } else { vec![] },
            })
            .collect()
    } else {
        let base = [1, odd, mid, odd, 1];
        let shift = 2 * d + 1;
        (0..=4 + shift)
            .map(|p| {
                let lower = base.get(p as usize).copied().unwrap_or(0);
                let upper = p.checked_sub(shift).and_then(|q| base.get(q as usize)).copied().unwrap_or(0);
                CohomologyGroup { degree: p, rank: lower + upper, torsion: vec![] }
            })
            .collect()
    };
    Ok(CohomologyTable { groups })
}

/// `(p1, e)` for a d = 1 join over ℂP¹×ℂP¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HomeoKey {
    pub p1: i64,
    pub euler: i64,
}

pub fn homeo_key(spec: &FiberJoinSpec) -> Result<HomeoKey, TopologyError> {
    let cp1_pair = spec.base().len() == 2 && spec.base().iter().all(BaseFactor::is_cp1);
    if !cp1_pair || spec.d() != 1 {
        return Err(TopologyError::UnsupportedBase("homeomorphism key needs d = 1 over CP^1 x CP^1"));
    }
    Ok(HomeoKey { p1: p1(spec)?, euler: euler_class(spec)? })
}

/// Key of the symmetric family `K = [[k, l], [l, k]]`, `k > l >= 1`.
pub fn homeo_key_symmetric(k: i64, l: i64) -> Result<HomeoKey, TopologyError> {
    if !(k > l && l >= 1) {
        return Err(TopologyError::InvalidFamily { k, l });
    }
    let cp1 = BaseFactor::ProjectiveSpace { n: 1 };
    let spec = FiberJoinSpec::new(vec![cp1, cp1], vec![vec![k, l], vec![l, k]], Some((0, 0)))
        .map_err(|_| TopologyError::InvalidFamily { k, l })?;
    homeo_key(&spec)
}

/// Everything this module knows about a spec. Unsupported invariants are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub c1: ClassVector,
    pub colinear: bool,
    pub euler: Option<i64>,
    pub p1: Option<i64>,
    pub spin: SpinStatus,
    pub cohomology: Option<CohomologyTable>,
    pub homeo_key: Option<HomeoKey>,
}

impl InvariantReport {
    pub fn of(spec: &FiberJoinSpec) -> Self {
        InvariantReport {
            c1: c1_contact(spec),
            colinear: spec.is_colinear(),
            euler: euler_class(spec).ok(),
            p1: p1(spec).ok(),
            spin: spin_status(spec),
            cohomology: cohomology_table(spec).ok(),
            homeo_key: homeo_key(spec).ok(),
        }
    }
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantReport", 7)?;
        st.serialize_field("c1", &self.c1)?;
        st.serialize_field("colinear", &self.colinear)?;
        st.serialize_field("cone_decomposable", &self.colinear)?;
        st.serialize_field("euler", &self.euler)?;
        st.serialize_field("p1", &self.p1)?;
        st.serialize_field("spin", &self.spin)?;
        let table: Option<Vec<String>> =
            self.cohomology.as_ref().map(|t| t.groups.iter().map(ToString::to_string).collect());
        st.serialize_field("cohomology", &table)?;
        st.serialize_field("homeo_key", &self.homeo_key)?;
        st.end()
    }
}
