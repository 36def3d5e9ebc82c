//! JSON space documents.
//!
//! ```json
//! {"lattice": {"n": 1},
//!  "points": ["x", "y", "z"],
//!  "lines": [{"name": "d1", "values": ["a1", "1", "0"]}]}
//! ```
//!
//! Values use the lattice token grammar. Unknown fields are rejected; an
//! optional free-form `"meta"` object is carried through untouched.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{FlsError, Result};
use crate::lattice::ChainLattice;
use crate::space::{FuzzyLine, FuzzyLinearSpace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineDoc {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    pub lattice: LatticeDoc,
    pub points: Vec<String>,
    pub lines: Vec<LineDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Map<String, serde_json::Value>>,
}

impl SpaceDocument {
    pub fn from_space(space: &FuzzyLinearSpace) -> Self {
        SpaceDocument {
            lattice: LatticeDoc {
                n: space.lattice().n(),
            },
            points: space.point_names().to_vec(),
            lines: space
                .lines()
                .iter()
                .map(|d| LineDoc {
                    name: d.name().to_string(),
                    values: d.values().iter().map(|e| e.to_string()).collect(),
                })
                .collect(),
            meta: None,
        }
    }

    pub fn to_space(&self) -> Result<FuzzyLinearSpace> {
        let lat = ChainLattice::new(self.lattice.n)
            .map_err(|e| FlsError::parse("lattice.n", e.to_string()))?;
        let mut seen = HashSet::new();
        for (i, name) in self.points.iter().enumerate() {
            if !seen.insert(name) {
                return Err(FlsError::parse(
                    format!("points[{i}]"),
                    format!("duplicate point name {name:?}"),
                ));
            }
        }
        let mut seen = HashSet::new();
        let mut lines = Vec::with_capacity(self.lines.len());
        for (i, line) in self.lines.iter().enumerate() {
            if !seen.insert(&line.name) {
                return Err(FlsError::parse(
                    format!("lines[{i}].name"),
                    format!("duplicate line name {:?}", line.name),
                ));
            }
            if line.values.len() != self.points.len() {
                return Err(FlsError::parse(
                    format!("lines[{i}].values"),
                    format!(
                        "{} values for {} points",
                        line.values.len(),
                        self.points.len()
                    ),
                ));
            }
            let values = line
                .values
                .iter()
                .enumerate()
                .map(|(j, tok)| {
                    lat.parse_token(tok).map_err(|e| {
                        FlsError::parse(format!("lines[{i}].values[{j}]"), e.to_string())
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            lines.push(FuzzyLine::new(line.name.clone(), values));
        }
        FuzzyLinearSpace::new(self.points.clone(), lat, lines)
            .map_err(|e| FlsError::parse("document", e.to_string()))
    }
}

pub fn parse_document(doc: &[u8]) -> Result<SpaceDocument> {
    serde_json::from_slice(doc).map_err(|e| {
        FlsError::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })
}

pub fn parse_space(doc: &[u8]) -> Result<FuzzyLinearSpace> {
    parse_document(doc)?.to_space()
}

/// Pretty-printed document with a trailing newline.
pub fn serialize_space(space: &FuzzyLinearSpace) -> String {
    let mut s = serde_json::to_string_pretty(&SpaceDocument::from_space(space))
        .expect("document serializes");
    s.push('\n');
    s
}
