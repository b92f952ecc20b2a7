//! The spec document read by the command line:
//! `{"base": [{"kind": "surface", "genus": 5}, ...], "K": [[2, 1], [1, 3]], "split": [0, 0]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{BaseFactor, FiberJoinSpec, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub base: Vec<BaseFactor>,
    #[serde(rename = "K", default)]
    pub k: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<[u32; 2]>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed spec document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid spec: {0}")]
    Model(#[from] ModelError),
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_spec(spec: &FiberJoinSpec) -> Self {
        SpecDocument {
            base: spec.base().to_vec(),
            k: spec.rows().to_vec(),
            split: spec.declared_split().map(|(a, b)| [a, b]),
        }
    }

    pub fn to_spec(&self) -> Result<FiberJoinSpec, ModelError> {
        FiberJoinSpec::new(self.base.clone(), self.k.clone(), self.split.map(|[a, b]| (a, b)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec document serializes")
    }
}

/// Parses and validates in one step.
pub fn parse_spec(text: &str) -> Result<FiberJoinSpec, DocumentError> {
    Ok(SpecDocument::parse(text)?.to_spec()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_reference_document() {
        let text = r#"{ "base": [{"kind":"surface","genus":5},{"kind":"surface","genus":3}], "K": [[2,1],[1,3]], "split": [0,0] }"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.base(), &[BaseFactor::RiemannSurface { genus: 5 }, BaseFactor::RiemannSurface { genus: 3 }]);
        assert_eq!(spec.declared_split(), Some((0, 0)));
        let back = SpecDocument::from_spec(&spec);
        assert_eq!(parse_spec(&back.to_json()).unwrap(), spec);
    }

    #[test]
    fn other_factor_kinds() {
        let text = r#"{"base":[{"kind":"projective_space","n":2},{"kind":"torus"}],"K":[[1,1],[2,3]]}"#;
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.n(), 3);
        assert_eq!(spec.declared_split(), None);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_spec("{"), Err(DocumentError::Parse(_))));
        assert!(matches!(parse_spec(r#"{"base":[{"kind":"klein"}],"K":[[1],[1]]}"#), Err(DocumentError::Parse(_))));
        assert!(matches!(
            parse_spec(r#"{"base":[{"kind":"torus"}],"K":[[1],[0]]}"#),
            Err(DocumentError::Model(ModelError::NonPositiveEntry { .. }))
        ));
        assert!(matches!(parse_spec(r#"{"base":[{"kind":"torus"}],"K":[[1],[1]],"x":1}"#), Err(DocumentError::Parse(_))));
    }
}
