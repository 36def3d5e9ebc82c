//! k-fuzzy points and k-fuzzy lines.
//!
//! A point is k-fuzzy when some k distinct lines have a nonzero meet at it,
//! and a line is k-fuzzy when it has a nonzero meet over some k distinct
//! points. In a chain both reduce to counting nonzero values.

use serde::Serialize;

use crate::space::{FuzzyLine, FuzzyLinearSpace, PointId};

pub fn is_k_fuzzy_point(space: &FuzzyLinearSpace, x: PointId, k: usize) -> bool {
    space.point_degree(x) >= k
}

pub fn is_k_fuzzy_line(d: &FuzzyLine, k: usize) -> bool {
    d.support().len() >= k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degree {
    pub name: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FuzzinessSummary {
    pub per_point_degree: Vec<Degree>,
    pub per_line_degree: Vec<Degree>,
    pub max_point_k: usize,
    pub max_line_k: usize,
}

impl FuzzinessSummary {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("point  degree\n");
        for d in &self.per_point_degree {
            out.push_str(&format!("{:<6} {}\n", d.name, d.degree));
        }
        out.push_str("line   degree\n");
        for d in &self.per_line_degree {
            out.push_str(&format!("{:<6} {}\n", d.name, d.degree));
        }
        out.push_str(&format!(
            "max k-fuzzy point: {}\nmax k-fuzzy line: {}\n",
            self.max_point_k, self.max_line_k
        ));
        out
    }
}

pub fn summarize(space: &FuzzyLinearSpace) -> FuzzinessSummary {
    let per_point_degree: Vec<Degree> = space
        .points()
        .map(|p| Degree {
            name: space.point_name(p).to_string(),
            degree: space.point_degree(p),
        })
        .collect();
    let per_line_degree: Vec<Degree> = space
        .lines()
        .iter()
        .zip(space.supports())
        .map(|(d, s)| Degree {
            name: d.name().to_string(),
            degree: s.len(),
        })
        .collect();
    FuzzinessSummary {
        max_point_k: per_point_degree.iter().map(|d| d.degree).max().unwrap_or(0),
        max_line_k: per_line_degree.iter().map(|d| d.degree).max().unwrap_or(0),
        per_point_degree,
        per_line_degree,
    }
}
