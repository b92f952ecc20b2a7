//! Sasaki–Einstein obstructions and counts.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::model::{BaseFactor, FiberJoinSpec};
use crate::topology::c1_contact;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EinsteinError {
    #[error("base is not Fano")]
    NotFano,
}

/// Largest integer dividing `c1(N)`, defined when every coefficient is positive.
pub fn fano_index(base: &[BaseFactor]) -> Result<u64, EinsteinError> {
    let c1: Vec<i64> = base.iter().map(BaseFactor::c1).collect();
    if c1.is_empty() || c1.iter().any(|&c| c <= 0) {
        return Err(EinsteinError::NotFano);
    }
    Ok(c1.iter().fold(0i64, |a, &c| a.gcd(&c)) as u64)
}

/// Number of multisets of `parts` positive integers summing to `n`.
pub fn partitions(n: u32, parts: u32) -> u128 {
    let (n, k) = (n as usize, parts as usize);
    if k == 0 {
        return u128::from(n == 0);
    }
    if k > n {
        return 0;
    }
    // table[i][j]: partitions of i into exactly j parts
    let mut table = vec![vec![0u128; k + 1]; n + 1];
    table[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            table[i][j] = table[i - 1][j - 1] + table[i - j][j];
        }
    }
    table[n][k]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeStatus {
    Obstructed,
    NecessaryConditionsPass,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeVerdict {
    pub status: SeStatus,
    pub reason: String,
    pub count: Option<u128>,
}

impl SeVerdict {
    pub fn possible(&self) -> bool {
        self.status != SeStatus::Obstructed
    }

    fn obstructed(reason: &str) -> Self {
        SeVerdict { status: SeStatus::Obstructed, reason: reason.to_string(), count: None }
    }
}

/// Runs the necessary conditions in order and reports the first failure.
/// Existence is claimed only for the two cases with a known construction.
pub fn se_check(spec: &FiberJoinSpec) -> SeVerdict {
    let n = spec.n();
    let d = spec.d();
    // Checked before c1: it depends on the split alone, so it is the more
    // informative reason whenever both fail.
    if let Some((d0, dinf)) = spec.split() {
        if d0 == dinf && d0 >= n {
            return SeVerdict::obstructed("d0 = dinf >= n excludes Sasaki-Einstein metrics");
        }
    }
    if c1_contact(spec).iter().any(|&c| c != 0) {
        return SeVerdict::obstructed("c1 of the contact bundle is nonzero");
    }
    if spec.is_colinear() {
        let index = match fano_index(spec.base()) {
            Ok(i) => i,
            Err(_) => return SeVerdict::obstructed("base is not Fano"),
        };
        if index == 1 {
            return SeVerdict::obstructed("colinear join over a base of Fano index 1");
        }
        let data = spec.regular_join_data().expect("colinear");
        let total_b: i64 = data.multiples.iter().sum();
        let total_w: i64 = data.w.iter().sum();
        if total_b as u64 != index {
            return SeVerdict::obstructed("|b| differs from the Fano index");
        }
        if n < d {
            return SeVerdict::obstructed("base dimension below fiber parameter d");
        }
        if index % total_w as u64 != 0 {
            return SeVerdict::obstructed("|w| does not divide the Fano index");
        }
        if n == d && data.w.iter().any(|&w| w != 1) {
            return SeVerdict::obstructed("n = d forces w = (1, ..., 1)");
        }
        debug_assert!(u64::from(d) < index && index <= u64::from(n) + 1);

        if let [BaseFactor::ProjectiveSpace { n: pn }] = spec.base() {
            if d == 1 {
                return SeVerdict {
                    status: SeStatus::Exists,
                    reason: "rank two colinear join over CP^n with b1 + b2 = n + 1".to_string(),
                    count: Some(partitions(pn + 1, 2)),
                };
            }
        }
    }
    let homogeneous = spec.base().len() == 2
        && spec.base().iter().all(BaseFactor::is_cp1)
        && spec.rows().len() == 2
        && spec.rows().iter().flatten().all(|&k| k == 1);
    if homogeneous {
        return SeVerdict {
            status: SeStatus::Exists,
            reason: "homogeneous iterated join S3 * S3 * S3".to_string(),
            count: Some(1),
        };
    }
    SeVerdict {
        status: SeStatus::NecessaryConditionsPass,
        reason: "necessary conditions pass; existence not decided".to_string(),
        count: None,
    }
}
