//! The fuzzy linear space data model `S = (N, D)`.
//!
//! A space is a list of named points, a chain lattice, and a list of named
//! lines, each line mapping every point to a lattice value. The support of
//! a line is the set of points where its value is nonzero. Because meets in
//! a chain are nonzero exactly when all operands are nonzero, every incidence
//! axiom below is a condition on supports.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{FlsError, Result};
use crate::lattice::{ChainLattice, LatticeElement};

/// Point sets are 64-bit masks, so a space holds at most this many points.
pub const MAX_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointId(pub usize);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., v-1}`.
    pub fn full(v: usize) -> Self {
        assert!(v <= MAX_POINTS);
        if v == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << v) - 1)
        }
    }

    pub fn singleton(p: PointId) -> Self {
        PointSet(1u64 << p.0)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, p: PointId) -> bool {
        p.0 < MAX_POINTS && self.0 >> p.0 & 1 == 1
    }

    pub fn insert(&mut self, p: PointId) {
        self.0 |= 1u64 << p.0;
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(&self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = PointId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(PointId(i))
            }
        })
    }

    /// Every subset of `self`, in increasing order of mask value.
    pub fn subsets(&self) -> impl Iterator<Item = PointSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some(cur.wrapping_sub(full) & full)
            };
            Some(PointSet(cur))
        })
    }
}

impl FromIterator<PointId> for PointSet {
    fn from_iter<I: IntoIterator<Item = PointId>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzyLine {
    name: String,
    values: Vec<LatticeElement>,
}

impl FuzzyLine {
    pub fn new(name: impl Into<String>, values: Vec<LatticeElement>) -> Self {
        FuzzyLine {
            name: name.into(),
            values,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[LatticeElement] {
        &self.values
    }

    pub fn value(&self, p: PointId) -> LatticeElement {
        self.values[p.0]
    }

    /// Points with nonzero value.
    pub fn support(&self) -> PointSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, _)| PointId(i))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FuzzyLinearSpace {
    point_names: Vec<String>,
    lattice: ChainLattice,
    lines: Vec<FuzzyLine>,
    supports: Vec<PointSet>,
}

impl FuzzyLinearSpace {
    /// Builds a structurally well-formed space. Axioms are checked separately
    /// by [`FuzzyLinearSpace::validate`].
    pub fn new(
        point_names: Vec<String>,
        lattice: ChainLattice,
        lines: Vec<FuzzyLine>,
    ) -> Result<Self> {
        if point_names.len() > MAX_POINTS {
            return Err(FlsError::invalid(format!(
                "{} points exceed the maximum of {MAX_POINTS}",
                point_names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &point_names {
            if !seen.insert(name.as_str()) {
                return Err(FlsError::invalid(format!("duplicate point name {name:?}")));
            }
        }
        let mut seen = HashSet::new();
        for line in &lines {
            if !seen.insert(line.name.as_str()) {
                return Err(FlsError::invalid(format!(
                    "duplicate line name {:?}",
                    line.name
                )));
            }
            if line.values.len() != point_names.len() {
                return Err(FlsError::invalid(format!(
                    "line {:?} has {} values for {} points",
                    line.name,
                    line.values.len(),
                    point_names.len()
                )));
            }
            if let Some(e) = line.values.iter().find(|e| !lattice.contains(**e)) {
                return Err(FlsError::invalid(format!(
                    "line {:?} has value from {} in a space over {lattice}",
                    line.name,
                    e.lattice()
                )));
            }
        }
        let supports = lines.iter().map(FuzzyLine::support).collect();
        Ok(FuzzyLinearSpace {
            point_names,
            lattice,
            lines,
            supports,
        })
    }

    /// Crisp space whose lines are the indicators of the given supports.
    pub fn from_supports(
        point_names: Vec<String>,
        lines: Vec<(String, PointSet)>,
    ) -> Result<Self> {
        let lat = ChainLattice::crisp();
        let v = point_names.len();
        let lines = lines
            .into_iter()
            .map(|(name, s)| {
                let values = (0..v)
                    .map(|i| if s.contains(PointId(i)) { lat.top() } else { lat.bottom() })
                    .collect();
                FuzzyLine::new(name, values)
            })
            .collect();
        Self::new(point_names, lat, lines)
    }

    /// Same supports over `lat`, with the value at each supported position
    /// chosen by `rank(line_index, point)`, which must return a nonzero rank.
    pub fn relabeled<F>(&self, lat: ChainLattice, mut rank: F) -> Result<Self>
    where
        F: FnMut(usize, PointId) -> u32,
    {
        let mut lines = Vec::with_capacity(self.lines.len());
        for (j, line) in self.lines.iter().enumerate() {
            let support = self.supports[j];
            let mut values = Vec::with_capacity(self.v());
            for i in 0..self.v() {
                let p = PointId(i);
                if support.contains(p) {
                    let r = rank(j, p);
                    if r == 0 {
                        return Err(FlsError::invalid("relabeling must use nonzero values"));
                    }
                    values.push(lat.element(r)?);
                } else {
                    values.push(lat.bottom());
                }
            }
            lines.push(FuzzyLine::new(line.name.clone(), values));
        }
        Self::new(self.point_names.clone(), lat, lines)
    }

    pub fn v(&self) -> usize {
        self.point_names.len()
    }

    pub fn b(&self) -> usize {
        self.lines.len()
    }

    pub fn lattice(&self) -> ChainLattice {
        self.lattice
    }

    pub fn point_names(&self) -> &[String] {
        &self.point_names
    }

    pub fn point_name(&self, p: PointId) -> &str {
        &self.point_names[p.0]
    }

    pub fn point_id(&self, name: &str) -> Option<PointId> {
        self.point_names.iter().position(|n| n == name).map(PointId)
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> {
        (0..self.v()).map(PointId)
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.v())
    }

    pub fn lines(&self) -> &[FuzzyLine] {
        &self.lines
    }

    pub fn line(&self, name: &str) -> Option<&FuzzyLine> {
        self.lines.iter().find(|d| d.name == name)
    }

    pub fn supports(&self) -> &[PointSet] {
        &self.supports
    }

    /// Support sizes `v_j`, in line order.
    pub fn support_sizes(&self) -> Vec<usize> {
        self.supports.iter().map(PointSet::len).collect()
    }

    /// Number of lines with nonzero value at `x`.
    pub fn point_degree(&self, x: PointId) -> usize {
        self.supports.iter().filter(|s| s.contains(x)).count()
    }

    pub fn set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<PointSet> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.point_id(n)
                    .ok_or_else(|| FlsError::invalid(format!("unknown point {n:?}")))
            })
            .collect()
    }

    pub fn names_of(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|p| self.point_names[p.0].clone()).collect()
    }

    /// Same points and supports over `{0, 1}`, every line replaced by the
    /// indicator of its support.
    pub fn crisp_shadow(&self) -> FuzzyLinearSpace {
        let lines = self
            .lines
            .iter()
            .zip(&self.supports)
            .map(|(d, s)| (d.name.clone(), *s))
            .collect();
        FuzzyLinearSpace::from_supports(self.point_names.clone(), lines)
            .expect("shadow of a well-formed space is well-formed")
    }

    /// The unique line whose support contains both points.
    pub fn line_through(&self, x: PointId, y: PointId) -> Result<&FuzzyLine> {
        if x.0 >= self.v() || y.0 >= self.v() {
            return Err(FlsError::invalid("point index out of range"));
        }
        if x == y {
            return Err(FlsError::invalid(format!(
                "line through a single point {:?} is not determined",
                self.point_name(x)
            )));
        }
        let pair = PointSet::singleton(x).union(PointSet::singleton(y));
        let mut covering = self
            .supports
            .iter()
            .enumerate()
            .filter(|(_, s)| pair.is_subset(**s));
        match (covering.next(), covering.next()) {
            (Some((j, _)), None) => Ok(&self.lines[j]),
            (None, _) => Err(FlsError::AxiomViolation(format!(
                "no line covers {{{}, {}}}",
                self.point_name(x),
                self.point_name(y)
            ))),
            (Some(_), Some(_)) => Err(FlsError::AxiomViolation(format!(
                "more than one line covers {{{}, {}}}",
                self.point_name(x),
                self.point_name(y)
            ))),
        }
    }

    pub fn validate(&self, axioms: AxiomSet) -> ValidationReport {
        let mut entries = vec![self.check_a1(), self.check_a2(), self.check_a3()];
        if axioms.pairwise_intersection {
            entries.push(self.check_a4());
        }
        ValidationReport { entries }
    }

    fn check_a1(&self) -> AxiomCheck {
        let witness = if self.v() == 0 {
            Some(Witness::Empty { what: "points" })
        } else if self.b() == 0 {
            Some(Witness::Empty { what: "lines" })
        } else {
            None
        };
        AxiomCheck::new(Axiom::A1, witness)
    }

    fn check_a2(&self) -> AxiomCheck {
        let witness = self
            .supports
            .iter()
            .position(|s| s.len() < 2)
            .map(|j| Witness::ShortLine {
                line: self.lines[j].name.clone(),
                support_size: self.supports[j].len(),
            });
        AxiomCheck::new(Axiom::A2, witness)
    }

    fn check_a3(&self) -> AxiomCheck {
        let v = self.v();
        for i in 0..v {
            for k in i + 1..v {
                let pair = PointSet::singleton(PointId(i)).union(PointSet::singleton(PointId(k)));
                let covering: Vec<String> = self
                    .supports
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| pair.is_subset(**s))
                    .map(|(j, _)| self.lines[j].name.clone())
                    .collect();
                if covering.len() != 1 {
                    let witness = Witness::Pair {
                        points: [self.point_names[i].clone(), self.point_names[k].clone()],
                        covering_lines: covering,
                    };
                    return AxiomCheck::new(Axiom::A3, Some(witness));
                }
            }
        }
        AxiomCheck::new(Axiom::A3, None)
    }

    fn check_a4(&self) -> AxiomCheck {
        let witness = self.first_disjoint_lines().map(|(a, b)| Witness::DisjointLines {
            lines: [self.lines[a].name.clone(), self.lines[b].name.clone()],
        });
        AxiomCheck::new(Axiom::A4, witness)
    }

    /// First pair of line indices (lexicographic) with disjoint supports.
    pub fn first_disjoint_lines(&self) -> Option<(usize, usize)> {
        let b = self.b();
        (0..b)
            .flat_map(|a| (a + 1..b).map(move |c| (a, c)))
            .find(|&(a, c)| self.supports[a].intersection(self.supports[c]).is_empty())
    }
}

impl fmt::Display for FuzzyLinearSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space over {}: points {}", self.lattice, self.point_names.join(" "))?;
        for d in &self.lines {
            let vals: Vec<String> = d.values.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  {} = ({})", d.name, vals.join(","))?;
        }
        Ok(())
    }
}

/// Which incidence axioms `validate` checks. A1 through A3 are always
/// checked; A4 (pairwise line intersection) is optional.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AxiomSet {
    pub pairwise_intersection: bool,
}

impl AxiomSet {
    pub const BASE: AxiomSet = AxiomSet {
        pairwise_intersection: false,
    };
    pub const WITH_INTERSECTION: AxiomSet = AxiomSet {
        pairwise_intersection: true,
    };

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1a2a3" => Ok(Self::BASE),
            "a1a2a3a4" => Ok(Self::WITH_INTERSECTION),
            _ => Err(FlsError::invalid(format!(
                "unknown axiom set {s:?}, expected a1a2a3 or a1a2a3a4"
            ))),
        }
    }
}

impl fmt::Display for AxiomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.pairwise_intersection {
            "a1a2a3a4"
        } else {
            "a1a2a3"
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
}

impl Axiom {
    pub fn description(&self) -> &'static str {
        match self {
            Axiom::A1 => "nonempty point and line sets",
            Axiom::A2 => "every line has at least two points",
            Axiom::A3 => "every point pair lies on exactly one line",
            Axiom::A4 => "every two lines share a point",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Empty {
        what: &'static str,
    },
    ShortLine {
        line: String,
        #[serde(rename = "supportSize")]
        support_size: usize,
    },
    Pair {
        points: [String; 2],
        #[serde(rename = "coveringLines")]
        covering_lines: Vec<String>,
    },
    DisjointLines {
        lines: [String; 2],
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Empty { what } => write!(f, "no {what}"),
            Witness::ShortLine { line, support_size } => {
                write!(f, "line {line} has support size {support_size}")
            }
            Witness::Pair {
                points,
                covering_lines,
            } => write!(
                f,
                "pair {{{}, {}}} covered by {} lines [{}]",
                points[0],
                points[1],
                covering_lines.len(),
                covering_lines.join(", ")
            ),
            Witness::DisjointLines { lines } => {
                write!(f, "lines {} and {} are disjoint", lines[0], lines[1])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    fn new(axiom: Axiom, witness: Option<Witness>) -> Self {
        AxiomCheck {
            axiom,
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.entries.iter().find(|e| !e.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = if e.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("{:?}  {status}  {}", e.axiom, e.axiom.description()));
            if let Some(w) = &e.witness {
                out.push_str(&format!("  ({w})"));
            }
            out.push('\n');
        }
        out
    }
}
