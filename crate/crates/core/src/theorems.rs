//! Clause-by-clause checkers for the classical de Bruijn–Erdős theorem and
//! its generalization to fuzzy linear spaces.
//!
//! Clauses of the generalized statement, evaluated independently:
//!
//! * C1: `b >= v`.
//! * C2: every two lines have a point where their meet is nonzero.
//! * C3: the space is a near-pencil (one `(v-1)`-fuzzy line, all others
//!   exactly 2-fuzzy) or uniform (every line `(k+1)`-fuzzy for one `k >= 2`).
//! * C4: in the uniform case, every point lies on exactly `k+1` lines.
//!
//! The classical checker evaluates the same quantities on crisp spaces but
//! only demands C2 through C4 when `b = v`.

use std::fmt;

use serde::Serialize;

use crate::closure;
use crate::counting::{count_k_fuzzy_point_configs, Count};
use crate::error::{FlsError, Result};
use crate::space::{AxiomSet, FuzzyLinearSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Classical,
    Generalized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    NearPencil,
    /// Every line has `k + 1` points, `k >= 2`.
    Uniform { k: usize },
    Neither,
}

impl Shape {
    pub fn name(&self) -> &'static str {
        match self {
            Shape::NearPencil => "near-pencil",
            Shape::Uniform { .. } => "uniform",
            Shape::Neither => "neither",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            Shape::Uniform { k } => Some(*k),
            _ => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Uniform { k } => write!(f, "uniform(k={k})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Clause {
    C1,
    C2,
    C3,
    C4,
}

impl Clause {
    pub const ALL: [Clause; 4] = [Clause::C1, Clause::C2, Clause::C3, Clause::C4];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c1" => Ok(Clause::C1),
            "c2" => Ok(Clause::C2),
            "c3" => Ok(Clause::C3),
            "c4" => Ok(Clause::C4),
            _ => Err(FlsError::invalid(format!("unknown clause {s:?}"))),
        }
    }

    fn description(&self) -> &'static str {
        match self {
            Clause::C1 => "b >= v",
            Clause::C2 => "any two lines meet",
            Clause::C3 => "near-pencil or uniform",
            Clause::C4 => "uniform point regularity",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinePairWitness {
    pub lines: [usize; 2],
    pub names: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub theorem: Theorem,
    pub b: usize,
    pub v: usize,
    pub b_geq_v: bool,
    /// Informational; the strict inequality fails whenever `b = v`.
    pub b_gt_v: bool,
    pub pairwise_intersection: bool,
    pub intersection_witness: Option<LinePairWitness>,
    pub shape: Shape,
    pub uniform_point_regular: Option<bool>,
    pub fuzz_point_product: Option<Count>,
    pub closure_idempotent: bool,
    pub notes: Vec<String>,
}

const NOTE_STRICT: &str = "b > v fails because b = v; only b >= v is treated as a clause";
const NOTE_PRODUCT: &str = "fuzzPointProduct is the labeling count of the k+1 lines through a point, \
     not a point degree: a point lies on at most b lines";
const NOTE_PRODUCT_UNEQUAL: &str =
    "points carry different labeling products, so no single fuzzPointProduct exists";
const NOTE_NOT_EQUALITY: &str = "b > v, so the equality-case clauses do not apply";

impl Verdict {
    pub fn clause_holds(&self, clause: Clause) -> bool {
        let equality = self.b == self.v;
        let regular = match self.shape {
            Shape::Uniform { .. } => self.uniform_point_regular == Some(true),
            _ => true,
        };
        match (self.theorem, clause) {
            (_, Clause::C1) => self.b_geq_v,
            (Theorem::Generalized, Clause::C2) => self.pairwise_intersection,
            (Theorem::Generalized, Clause::C3) => self.shape != Shape::Neither,
            (Theorem::Generalized, Clause::C4) => regular,
            (Theorem::Classical, Clause::C2) => !equality || self.pairwise_intersection,
            (Theorem::Classical, Clause::C3) => !equality || self.shape != Shape::Neither,
            (Theorem::Classical, Clause::C4) => !equality || regular,
        }
    }

    pub fn failed_clauses(&self) -> Vec<Clause> {
        Clause::ALL
            .into_iter()
            .filter(|c| !self.clause_holds(*c))
            .collect()
    }

    pub fn holds(&self) -> bool {
        self.failed_clauses().is_empty()
    }

    /// The verdict with the lattice-dependent product removed.
    pub fn without_product(&self) -> Verdict {
        Verdict {
            fuzz_point_product: None,
            ..self.clone()
        }
    }

    pub fn render(&self, format: VerdictFormat) -> String {
        match format {
            VerdictFormat::Json => serde_json::to_string_pretty(&VerdictDoc::from(self))
                .expect("verdict serializes"),
            VerdictFormat::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = format!(
            "theorem: {}  (b = {}, v = {})\n",
            match self.theorem {
                Theorem::Classical => "classical",
                Theorem::Generalized => "generalized",
            },
            self.b,
            self.v
        );
        for clause in Clause::ALL {
            let status = if self.clause_holds(clause) { "pass" } else { "FAIL" };
            let detail = match clause {
                Clause::C1 => format!("b > v: {}", self.b_gt_v),
                Clause::C2 => match &self.intersection_witness {
                    Some(w) => format!("disjoint lines {}, {}", w.names[0], w.names[1]),
                    None => "all line pairs meet".to_string(),
                },
                Clause::C3 => self.shape.to_string(),
                Clause::C4 => match self.uniform_point_regular {
                    Some(r) => format!("every point on k+1 lines: {r}"),
                    None => "n/a".to_string(),
                },
            };
            out.push_str(&format!(
                "{clause}  {:<26} {status}  {detail}\n",
                clause.description()
            ));
        }
        if let Some(p) = &self.fuzz_point_product {
            out.push_str(&format!("fuzz point product: {p}\n"));
        }
        out.push_str(&format!(
            "closure idempotent on pairs: {}\n",
            self.closure_idempotent
        ));
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        let failed = self.failed_clauses();
        if failed.is_empty() {
            out.push_str("result: holds\n");
        } else {
            let names: Vec<String> = failed.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("result: FAILS ({})\n", names.join(", ")));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum VerdictFormat {
    #[default]
    Text,
    Json,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub(crate) struct VerdictDoc {
    theorem: Theorem,
    b: usize,
    v: usize,
    holds: bool,
    failed_clauses: Vec<Clause>,
    b_geq_v: bool,
    b_gt_v: bool,
    pairwise_intersection: bool,
    intersection_witness: Option<[String; 2]>,
    shape: &'static str,
    k: Option<usize>,
    uniform_point_regular: Option<bool>,
    fuzz_point_product: Option<Count>,
    closure_idempotent: bool,
    notes: Vec<String>,
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        VerdictDoc {
            theorem: v.theorem,
            b: v.b,
            v: v.v,
            holds: v.holds(),
            failed_clauses: v.failed_clauses(),
            b_geq_v: v.b_geq_v,
            b_gt_v: v.b_gt_v,
            pairwise_intersection: v.pairwise_intersection,
            intersection_witness: v.intersection_witness.as_ref().map(|w| w.names.clone()),
            shape: v.shape.name(),
            k: v.shape.k(),
            uniform_point_regular: v.uniform_point_regular,
            fuzz_point_product: v.fuzz_point_product.clone(),
            closure_idempotent: v.closure_idempotent,
            notes: v.notes.clone(),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VerdictDoc::from(self).serialize(s)
    }
}

/// Near-pencil or uniform classification from support sizes alone.
pub fn classify_shape(space: &FuzzyLinearSpace) -> Shape {
    let sizes = space.support_sizes();
    let v = space.v();
    if sizes.len() < 2 {
        return Shape::Neither;
    }
    let near = (0..sizes.len()).any(|j| {
        sizes[j] + 1 == v
            && sizes
                .iter()
                .enumerate()
                .all(|(i, &s)| i == j || s == 2)
    });
    if near {
        return Shape::NearPencil;
    }
    match sizes.first() {
        Some(&s) if s >= 3 && sizes.iter().all(|&t| t == s) => Shape::Uniform { k: s - 1 },
        _ => Shape::Neither,
    }
}

/// First pair of lines (lexicographic by index) whose meet is zero at every
/// point, evaluated through the lattice meet.
fn first_non_meeting_lines(space: &FuzzyLinearSpace) -> Option<LinePairWitness> {
    let lines = space.lines();
    for a in 0..lines.len() {
        for c in a + 1..lines.len() {
            let meets = space.points().any(|x| {
                !lines[a]
                    .value(x)
                    .meet(lines[c].value(x))
                    .expect("values share the space lattice")
                    .is_zero()
            });
            if !meets {
                return Some(LinePairWitness {
                    lines: [a, c],
                    names: [lines[a].name().to_string(), lines[c].name().to_string()],
                });
            }
        }
    }
    None
}

fn require_valid(space: &FuzzyLinearSpace, axioms: AxiomSet) -> Result<()> {
    let report = space.validate(axioms);
    if let Some(fail) = report.first_failure() {
        let witness = fail
            .witness
            .as_ref()
            .map(|w| format!(" ({w})"))
            .unwrap_or_default();
        return Err(FlsError::invalid(format!(
            "hypothesis {:?} ({}) fails{witness}",
            fail.axiom,
            fail.axiom.description()
        )));
    }
    Ok(())
}

fn point_regular(space: &FuzzyLinearSpace, k: usize) -> bool {
    space.points().all(|p| space.point_degree(p) == k + 1)
}

/// Labeling product over the lines through each point, if every point gives
/// the same value.
fn point_product(space: &FuzzyLinearSpace) -> Option<Count> {
    let lat = space.lattice();
    let mut products = space.points().map(|p| {
        let sizes: Vec<usize> = space
            .supports()
            .iter()
            .filter(|s| s.contains(p))
            .map(|s| s.len())
            .collect();
        count_k_fuzzy_point_configs(&sizes, lat)
    });
    let first = products.next()?;
    products.all(|c| c == first).then_some(first)
}

pub fn check_classical_dbe(space: &FuzzyLinearSpace) -> Result<Verdict> {
    if !space.lattice().is_crisp() {
        return Err(FlsError::invalid(format!(
            "hypothesis: crisp space required, got lattice {}",
            space.lattice()
        )));
    }
    require_valid(space, AxiomSet::BASE)?;
    if space.b() <= 1 {
        return Err(FlsError::invalid(format!(
            "hypothesis b > 1 fails (b = {})",
            space.b()
        )));
    }
    let (b, v) = (space.b(), space.v());
    let witness = first_non_meeting_lines(space);
    let shape = classify_shape(space);
    let mut notes = Vec::new();
    if b > v {
        notes.push(NOTE_NOT_EQUALITY.to_string());
    }
    Ok(Verdict {
        theorem: Theorem::Classical,
        b,
        v,
        b_geq_v: b >= v,
        b_gt_v: b > v,
        pairwise_intersection: witness.is_none(),
        intersection_witness: witness,
        shape,
        uniform_point_regular: shape.k().map(|k| point_regular(space, k)),
        fuzz_point_product: None,
        closure_idempotent: closure::idempotent_on_pairs(space),
        notes,
    })
}

pub fn check_generalized_dbe(space: &FuzzyLinearSpace, axioms: AxiomSet) -> Result<Verdict> {
    require_valid(space, axioms)?;
    let (b, v) = (space.b(), space.v());
    if b <= 1 {
        return Err(FlsError::invalid(format!("hypothesis b > 1 fails (b = {b})")));
    }
    if v < 3 {
        return Err(FlsError::invalid(format!("hypothesis v >= 3 fails (v = {v})")));
    }
    let witness = first_non_meeting_lines(space);
    let shape = classify_shape(space);
    let mut notes = Vec::new();
    if b == v {
        notes.push(NOTE_STRICT.to_string());
    }
    let mut fuzz_point_product = None;
    if shape.k().is_some() {
        fuzz_point_product = point_product(space);
        notes.push(NOTE_PRODUCT.to_string());
        if fuzz_point_product.is_none() {
            notes.push(NOTE_PRODUCT_UNEQUAL.to_string());
        }
    }
    Ok(Verdict {
        theorem: Theorem::Generalized,
        b,
        v,
        b_geq_v: b >= v,
        b_gt_v: b > v,
        pairwise_intersection: witness.is_none(),
        intersection_witness: witness,
        shape,
        uniform_point_regular: shape.k().map(|k| point_regular(space, k)),
        fuzz_point_product,
        closure_idempotent: closure::idempotent_on_pairs(space),
        notes,
    })
}
