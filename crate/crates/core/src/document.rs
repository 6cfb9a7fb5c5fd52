//! JSON persistence for operator sets.
//!
//! ```json
//! {
//!   "n": 1,
//!   "operators": [{ "signs": [1, -1], "pairing": [2, 1] }],
//!   "metadata": { "generator": "s1-preset" }
//! }
//! ```
//!
//! Pairing indices are 1-based. Files are UTF-8 and end with a newline.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error as CoreError;
use crate::involution::{OperatorSet, SignedInvolution};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub signs: Vec<i64>,
    pub pairing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSetDocument {
    pub n: usize,
    pub operators: Vec<OperatorRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("n must be at least 1")]
    ZeroOrder,
    #[error("operator record {index}: {source}")]
    Record { index: usize, source: CoreError },
    #[error("{0}")]
    Set(CoreError),
}

impl OperatorSetDocument {
    pub fn from_set(set: &OperatorSet, metadata: Option<Metadata>) -> Self {
        OperatorSetDocument {
            n: set.order(),
            operators: set
                .iter()
                .map(|u| OperatorRecord {
                    signs: u.signs().iter().map(|s| i64::from(s.value())).collect(),
                    pairing: u.pairing(),
                })
                .collect(),
            metadata,
        }
    }

    /// Validate every record against dimension `2n`.
    ///
    /// Record indices in errors are 0-based positions in `operators`.
    pub fn to_set(&self) -> Result<OperatorSet, DocumentError> {
        if self.n == 0 {
            return Err(DocumentError::ZeroOrder);
        }
        let dim = 2 * self.n;
        let members = self
            .operators
            .iter()
            .enumerate()
            .map(|(index, r)| {
                SignedInvolution::from_ints(dim, &r.pairing, &r.signs)
                    .map_err(|source| DocumentError::Record { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        OperatorSet::new(dim, members).map_err(|e| match e {
            CoreError::DuplicateOperator(pos) => DocumentError::Record {
                index: pos - 1,
                source: e,
            },
            other => DocumentError::Set(other),
        })
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

/// Parse and validate in one step.
pub fn read_set(text: &str) -> Result<OperatorSet, DocumentError> {
    OperatorSetDocument::parse(text)?.to_set()
}
