//! Fiber-join specifications: base factors, the integer Kähler-class matrix
//! and the fiber split, plus colinearity and canonical forms.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted matrix entry. Keeps every derived invariant inside `i64`.
pub const MAX_ENTRY: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("base must contain at least one factor")]
    EmptyBase,
    #[error("projective space factor needs n >= 1")]
    InvalidFactor,
    #[error("K entry at row {row}, column {col} is {value}; entries must be positive")]
    NonPositiveEntry { row: usize, col: usize, value: i64 },
    #[error("K entry at row {row}, column {col} exceeds {MAX_ENTRY}")]
    EntryTooLarge { row: usize, col: usize },
    #[error("K row {row} has {len} entries but the base has {factors} factors")]
    ShapeMismatch { row: usize, len: usize, factors: usize },
    #[error("K needs at least two rows, got {0}")]
    TooFewRows(usize),
    #[error("split {0:?} does not match the rows of K")]
    SplitMismatch((u32, u32)),
    #[error("K is not colinear")]
    NotColinear,
}

/// One factor of the base product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseFactor {
    #[serde(rename = "surface", alias = "riemann_surface")]
    RiemannSurface { genus: u32 },
    ProjectiveSpace { n: u32 },
    #[serde(alias = "torus_2d")]
    Torus,
}

impl BaseFactor {
    pub fn complex_dim(&self) -> u32 {
        match self {
            BaseFactor::ProjectiveSpace { n } => *n,
            _ => 1,
        }
    }

    /// First Chern class as a multiple of the primitive generator.
    pub fn c1(&self) -> i64 {
        match self {
            BaseFactor::RiemannSurface { genus } => 2 - 2 * i64::from(*genus),
            BaseFactor::ProjectiveSpace { n } => i64::from(*n) + 1,
            BaseFactor::Torus => 0,
        }
    }

    /// Genus when the factor is a real surface (ℂP¹ counts as genus 0).
    pub fn surface_genus(&self) -> Option<u32> {
        match self {
            BaseFactor::RiemannSurface { genus } => Some(*genus),
            BaseFactor::ProjectiveSpace { n: 1 } => Some(0),
            BaseFactor::Torus => Some(1),
            BaseFactor::ProjectiveSpace { .. } => None,
        }
    }

    pub fn is_cp1(&self) -> bool {
        self.surface_genus() == Some(0)
    }

    pub fn label(&self) -> String {
        match self {
            BaseFactor::RiemannSurface { genus } => format!("Sigma_{genus}"),
            BaseFactor::ProjectiveSpace { n } => format!("CP^{n}"),
            BaseFactor::Torus => "T^2".to_string(),
        }
    }
}

/// Rows are Kähler classes, columns are base factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KahlerMatrix {
    rows: Vec<Vec<i64>>,
}

impl KahlerMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Self {
        KahlerMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.rows[row][col]
    }

    /// Rank at most one: every 2×2 minor vanishes.
    pub fn is_rank_one(&self) -> bool {
        let m = self.col_count();
        for (i, ri) in self.rows.iter().enumerate() {
            for rj in &self.rows[i + 1..] {
                for a in 0..m {
                    for b in a + 1..m {
                        if i128::from(ri[a]) * i128::from(rj[b]) != i128::from(ri[b]) * i128::from(rj[a]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Orbit representative under row and column permutations.
    pub fn canonicalize(&self) -> KahlerMatrix {
        let perms = permutations(self.col_count());
        self.best_over(&perms)
    }

    /// Like [`canonicalize`](Self::canonicalize) but only swaps columns whose
    /// base factors are identical, so the result still matches `base`.
    pub fn canonicalize_with_base(&self, base: &[BaseFactor]) -> KahlerMatrix {
        let perms: Vec<Vec<usize>> = permutations(self.col_count())
            .into_iter()
            .filter(|p| p.iter().enumerate().all(|(i, &j)| base[i] == base[j]))
            .collect();
        self.best_over(&perms)
    }

    fn best_over(&self, perms: &[Vec<usize>]) -> KahlerMatrix {
        perms
            .iter()
            .map(|p| {
                let mut rows: Vec<Vec<i64>> =
                    self.rows.iter().map(|r| p.iter().map(|&j| r[j]).collect()).collect();
                rows.sort_unstable_by(|a, b| b.cmp(a));
                rows
            })
            .max()
            .map_or_else(|| self.clone(), KahlerMatrix::new)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A validated fiber join.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberJoinSpec {
    base: Vec<BaseFactor>,
    classes: KahlerMatrix,
    split: Option<(u32, u32)>,
}

/// Colinear data: row j equals `b * w[j]` times the primitive class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularJoinData {
    pub primitive: Vec<i64>,
    pub multiples: Vec<i64>,
    pub b: i64,
    pub w: Vec<i64>,
}

impl FiberJoinSpec {
    pub fn new(base: Vec<BaseFactor>, rows: Vec<Vec<i64>>, split: Option<(u32, u32)>) -> Result<Self, ModelError> {
        if base.is_empty() {
            return Err(ModelError::EmptyBase);
        }
        if base.iter().any(|f| matches!(f, BaseFactor::ProjectiveSpace { n: 0 })) {
            return Err(ModelError::InvalidFactor);
        }
        if rows.len() < 2 {
            return Err(ModelError::TooFewRows(rows.len()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != base.len() {
                return Err(ModelError::ShapeMismatch { row: i, len: row.len(), factors: base.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 1 {
                    return Err(ModelError::NonPositiveEntry { row: i, col: j, value: v });
                }
                if v > MAX_ENTRY {
                    return Err(ModelError::EntryTooLarge { row: i, col: j });
                }
            }
        }
        if let Some((d0, dinf)) = split {
            let (d0u, dinfu) = (d0 as usize, dinf as usize);
            let ok = d0u + dinfu + 2 == rows.len()
                && rows[..=d0u].iter().all(|r| *r == rows[0])
                && rows[d0u + 1..].iter().all(|r| *r == rows[d0u + 1]);
            if !ok {
                return Err(ModelError::SplitMismatch((d0, dinf)));
            }
        }
        Ok(FiberJoinSpec { base, classes: KahlerMatrix::new(rows), split })
    }

    /// Two-block spec `(d0+1) × omega0` followed by `(dinf+1) × omega_inf`.
    pub fn from_blocks(base: Vec<BaseFactor>, omega0: Vec<i64>, omega_inf: Vec<i64>, d0: u32, dinf: u32) -> Result<Self, ModelError> {
        let mut rows = vec![omega0; d0 as usize + 1];
        rows.extend(std::iter::repeat_n(omega_inf, dinf as usize + 1));
        Self::new(base, rows, Some((d0, dinf)))
    }

    pub fn base(&self) -> &[BaseFactor] {
        &self.base
    }

    pub fn classes(&self) -> &KahlerMatrix {
        &self.classes
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        self.classes.rows()
    }

    pub fn declared_split(&self) -> Option<(u32, u32)> {
        self.split
    }

    /// The declared split, or `(0, 0)` when K has exactly two rows.
    pub fn split(&self) -> Option<(u32, u32)> {
        self.split.or(if self.rows().len() == 2 { Some((0, 0)) } else { None })
    }

    /// Fiber dimension parameter: the join sits in a sphere bundle with fiber S^{2d+1}.
    pub fn d(&self) -> u32 {
        (self.rows().len() - 1) as u32
    }

    /// Complex dimension of the base.
    pub fn n(&self) -> u32 {
        self.base.iter().map(BaseFactor::complex_dim).sum()
    }

    /// `(omega0, omega_inf)` when a split is available.
    pub fn blocks(&self) -> Option<(&[i64], &[i64])> {
        let (d0, _) = self.split()?;
        Some((&self.rows()[0], &self.rows()[d0 as usize + 1]))
    }

    pub fn is_colinear(&self) -> bool {
        self.classes.is_rank_one()
    }

    pub fn regular_join_data(&self) -> Result<RegularJoinData, ModelError> {
        if !self.is_colinear() {
            return Err(ModelError::NotColinear);
        }
        let first = &self.rows()[0];
        let g0 = first.iter().fold(0i64, |a, &x| a.gcd(&x));
        let primitive: Vec<i64> = first.iter().map(|x| x / g0).collect();
        let multiples: Vec<i64> = self.rows().iter().map(|r| r[0] / primitive[0]).collect();
        let b = multiples.iter().fold(0i64, |a, &x| a.gcd(&x));
        let w = multiples.iter().map(|m| m / b).collect();
        Ok(RegularJoinData { primitive, multiples, b, w })
    }

    /// True when the split exists and at least one factor has `k0 != kinf`.
    pub fn admissible_split_check(&self) -> bool {
        match self.blocks() {
            Some((w0, winf)) => w0.iter().zip(winf).any(|(a, b)| a != b),
            None => false,
        }
    }
}
