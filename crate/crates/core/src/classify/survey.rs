//! Enumeration of every two-block K with entries in a range, deduplicated by
//! canonical form and classified in parallel.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{classify, ClassifyError, Verdict};
use crate::model::{BaseFactor, FiberJoinSpec, KahlerMatrix, ModelError, MAX_ENTRY};
use crate::topology::InvariantReport;

/// Default limit on the number of enumerated block pairs.
pub const DEFAULT_CAP: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurveyBounds {
    pub min: i64,
    pub max: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurveyError {
    #[error("survey would enumerate {count} block pairs, above the cap of {cap}")]
    BoundsTooLarge { count: u128, cap: u64 },
    #[error("entry range must lie in 1..={MAX_ENTRY}")]
    InvalidBounds,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyEntry {
    #[serde(rename = "K")]
    pub k: KahlerMatrix,
    pub split: (u32, u32),
    pub invariants: InvariantReport,
    pub verdicts: Vec<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyMetadata {
    pub base: Vec<BaseFactor>,
    pub split: (u32, u32),
    pub bounds: SurveyBounds,
    pub enumerated: u64,
    pub entries: usize,
    pub tool_version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    pub metadata: SurveyMetadata,
    pub entries: Vec<SurveyEntry>,
}

/// Classifies every K made of `d0 + 1` copies of one row and `dinf + 1` copies
/// of another, entries within `bounds`. Entries are sorted by canonical K.
pub fn survey(
    base: &[BaseFactor],
    split: (u32, u32),
    bounds: SurveyBounds,
    cap: u64,
) -> Result<SurveyReport, SurveyError> {
    if bounds.min < 1 || bounds.max > MAX_ENTRY {
        return Err(SurveyError::InvalidBounds);
    }
    let width = u128::try_from((bounds.max - bounds.min + 1).max(0)).expect("non-negative");
    let rows_per_block = u32::try_from(base.len()).unwrap_or(u32::MAX);
    let count = width
        .checked_pow(rows_per_block.saturating_mul(2))
        .filter(|&c| c <= u128::from(cap))
        .ok_or(SurveyError::BoundsTooLarge {
            count: width.saturating_pow(rows_per_block.saturating_mul(2)),
            cap,
        })?;
    if base.is_empty() {
        return Err(ModelError::EmptyBase.into());
    }
    let count = u64::try_from(count).expect("below cap");

    let rows = all_rows(base.len(), bounds);
    let canon: BTreeSet<KahlerMatrix> = (0..rows.len() * rows.len())
        .into_par_iter()
        .map(|i| {
            let spec = FiberJoinSpec::from_blocks(
                base.to_vec(),
                rows[i / rows.len()].clone(),
                rows[i % rows.len()].clone(),
                split.0,
                split.1,
            )?;
            Ok(spec.classes().canonicalize_with_base(base))
        })
        .collect::<Result<_, ModelError>>()?;
    let canon: Vec<KahlerMatrix> = canon.into_iter().collect();

    let entries = canon
        .par_iter()
        .map(|k| {
            let s = block_split(k, split);
            let spec = FiberJoinSpec::new(base.to_vec(), k.rows().to_vec(), Some(s))?;
            Ok(SurveyEntry {
                k: k.clone(),
                split: s,
                invariants: InvariantReport::of(&spec),
                verdicts: classify(&spec)?,
            })
        })
        .collect::<Result<Vec<_>, SurveyError>>()?;

    Ok(SurveyReport {
        metadata: SurveyMetadata {
            base: base.to_vec(),
            split,
            bounds,
            enumerated: count,
            entries: entries.len(),
            tool_version: env!("CARGO_PKG_VERSION"),
        },
        entries,
    })
}

fn all_rows(m: usize, bounds: SurveyBounds) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (bounds.min..=bounds.max).map(move |v| {
                    let mut r = prefix.clone();
                    r.push(v);
                    r
                })
            })
            .collect();
    }
    if bounds.min > bounds.max {
        out.clear();
    }
    out
}

/// Split of a canonical two-block matrix. Sorting may put the longer block
/// first, so the split is read off the rows; equal blocks keep the request.
fn block_split(k: &KahlerMatrix, requested: (u32, u32)) -> (u32, u32) {
    let rows = k.rows();
    let first = rows.iter().take_while(|r| **r == rows[0]).count();
    if first == rows.len() {
        return requested;
    }
    ((first - 1) as u32, (rows.len() - first - 1) as u32)
}
