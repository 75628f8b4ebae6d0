use serde::{Deserialize, Serialize};

use super::IoError;
use crate::oracle::{Group, OracleError, Perm, PermGroup};

/// A permutation group on `{0, ..., degree-1}` given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u64>,
}

impl GroupDocument {
    pub fn new(name: impl Into<String>, degree: usize, generators: Vec<Perm>, expected_order: Option<u64>) -> Self {
        GroupDocument {
            name: name.into(),
            degree,
            generators: generators.iter().map(|g| g.images().iter().map(|&x| x as usize).collect()).collect(),
            expected_order,
        }
    }

    pub fn to_perm_group(&self) -> Result<PermGroup, IoError> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, images) in self.generators.iter().enumerate() {
            if images.len() != self.degree {
                return Err(IoError::field(
                    format!("generators[{i}]"),
                    format!("has {} images, expected degree {}", images.len(), self.degree),
                ));
            }
            gens.push(Perm::from_images(images).map_err(|e| IoError::field(format!("generators[{i}]"), e.to_string()))?);
        }
        Ok(PermGroup::new(self.degree, gens)?)
    }

    /// Enumerates the group and checks `expected_order` when present.
    pub fn enumerate(&self, cap: usize) -> Result<Group, IoError> {
        let g = self.to_perm_group()?.with_cap(cap).enumerate()?;
        if let Some(expected) = self.expected_order {
            if expected != g.order() {
                return Err(IoError::Oracle(OracleError::OrderMismatch { expected, actual: g.order() }));
            }
        }
        Ok(g)
    }
}

pub fn parse_group(text: &str) -> Result<GroupDocument, IoError> {
    super::from_json(text)
}

pub fn emit_group(doc: &GroupDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
