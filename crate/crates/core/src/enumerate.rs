//! Exhaustive generation of small linear-space skeletons and their fuzzy
//! labelings, with isomorphism rejection.
//!
//! Skeletons are found by backtracking on the smallest uncovered point pair:
//! the line covering that pair is any point set containing it whose pairs
//! are all still uncovered. Every labeled linear space is produced exactly
//! once. Incidence is kept as per-point adjacency masks of covered pairs.
//!
//! Canonical forms are the minimum, over point permutations, of the sorted
//! list of packed line vectors. Only permutations that list points in
//! increasing order of an isomorphism invariant are tried; automorphisms
//! preserve the invariant, so the minimum is still a complete invariant and
//! the number of minimizing permutations is the automorphism group order.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{space_cardinality, Count};
use crate::error::{FlsError, Result};
use crate::io::SpaceDocument;
use crate::lattice::ChainLattice;
use crate::space::{AxiomSet, FuzzyLinearSpace, PointId, PointSet};
use crate::theorems::{check_generalized_dbe, Clause, Verdict};

/// Hard cap on the number of points for enumeration and canonicalization.
pub const MAX_POINTS: usize = 7;
pub const MIN_POINTS: usize = 3;
pub const DEFAULT_CAP: usize = 10_000;

fn check_points(v: usize) -> Result<()> {
    if !(MIN_POINTS..=MAX_POINTS).contains(&v) {
        return Err(FlsError::invalid(format!(
            "point count {v} outside the supported range {MIN_POINTS}..={MAX_POINTS}"
        )));
    }
    Ok(())
}

struct SkeletonSearch {
    v: usize,
    adj: [u8; MAX_POINTS],
    lines: Vec<u8>,
    out: Vec<Vec<u8>>,
}

impl SkeletonSearch {
    fn smallest_uncovered(&self) -> Option<(usize, usize)> {
        (0..self.v).find_map(|i| {
            (i + 1..self.v)
                .find(|&j| self.adj[i] >> j & 1 == 0)
                .map(|j| (i, j))
        })
    }

    fn run(&mut self) {
        let Some((i, j)) = self.smallest_uncovered() else {
            self.out.push(self.lines.clone());
            return;
        };
        let mut cands = 0u8;
        for p in 0..self.v {
            if p != i && p != j && (self.adj[p] >> i & 1) == 0 && (self.adj[p] >> j & 1) == 0 {
                cands |= 1 << p;
            }
        }
        let mut choices = Vec::new();
        extensions((1 << i) | (1 << j), cands, &self.adj, &mut choices);
        for line in choices {
            self.add(line, true);
            self.lines.push(line);
            self.run();
            self.lines.pop();
            self.add(line, false);
        }
    }

    fn add(&mut self, line: u8, cover: bool) {
        for p in 0..self.v {
            if line >> p & 1 == 1 {
                let others = line & !(1 << p);
                if cover {
                    self.adj[p] |= others;
                } else {
                    self.adj[p] &= !others;
                }
            }
        }
    }
}

/// Every superset of `line` drawn from `cands` whose new pairs are uncovered.
fn extensions(line: u8, cands: u8, adj: &[u8; MAX_POINTS], out: &mut Vec<u8>) {
    out.push(line);
    let mut rest = cands;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        extensions(line | 1 << c, rest & !adj[c], adj, out);
    }
}

fn skeleton_masks(v: usize) -> Vec<Vec<u8>> {
    let mut search = SkeletonSearch {
        v,
        adj: [0; MAX_POINTS],
        lines: Vec::new(),
        out: Vec::new(),
    };
    search.run();
    search.out
}

fn numbered_space(v: usize, lines: &[u8]) -> FuzzyLinearSpace {
    let names = (1..=v).map(|i| i.to_string()).collect();
    let lines = lines
        .iter()
        .map(|&m| {
            let set = PointSet::from_bits(u64::from(m));
            (line_name(set, &HashSet::new()), set)
        })
        .collect();
    FuzzyLinearSpace::from_supports(names, lines).expect("skeleton is well-formed")
}

fn line_name(support: PointSet, taken: &HashSet<String>) -> String {
    let base: String = support.iter().map(|p| (p.0 + 1).to_string()).collect();
    let base = if base.is_empty() { "empty".to_string() } else { base };
    if !taken.contains(&base) {
        return base;
    }
    (2..)
        .map(|k| format!("{base}#{k}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded suffixes")
}

/// All labeled linear spaces on `v` points (points `"1".."v"`, lines named
/// by their points), in deterministic search order.
pub fn enumerate_skeletons(
    v: usize,
    nontrivial_only: bool,
) -> Result<impl Iterator<Item = FuzzyLinearSpace>> {
    check_points(v)?;
    Ok(skeleton_masks(v)
        .into_iter()
        .filter(move |lines| !nontrivial_only || lines.len() > 1)
        .map(move |lines| numbered_space(v, &lines)))
}

/// Sorted packed line vectors; the canonical key of a space.
pub type CanonicalKey = Vec<u128>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub space: FuzzyLinearSpace,
    pub key: CanonicalKey,
    pub automorphisms: usize,
}

const RANK_BITS: usize = 16;

fn pack(space: &FuzzyLinearSpace, perm: &[usize], j: usize) -> u128 {
    let v = space.v();
    space.lines()[j]
        .values()
        .iter()
        .enumerate()
        .fold(0u128, |acc, (x, e)| {
            acc | u128::from(e.rank()) << (RANK_BITS * (v - 1 - perm[x]))
        })
}

/// Points grouped by an isomorphism invariant, groups in increasing order.
fn invariant_cells(space: &FuzzyLinearSpace) -> Vec<Vec<usize>> {
    let mut by_invariant: BTreeMap<Vec<(usize, u32)>, Vec<usize>> = BTreeMap::new();
    for p in space.points() {
        let mut inv: Vec<(usize, u32)> = space
            .lines()
            .iter()
            .zip(space.supports())
            .filter(|(_, s)| s.contains(p))
            .map(|(d, s)| (s.len(), d.value(p).rank()))
            .collect();
        inv.sort_unstable();
        by_invariant.entry(inv).or_default().push(p.0);
    }
    by_invariant.into_values().collect()
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

pub fn canonical_form(space: &FuzzyLinearSpace) -> Result<CanonicalForm> {
    let v = space.v();
    if v > MAX_POINTS {
        return Err(FlsError::invalid(format!(
            "canonicalization supports at most {MAX_POINTS} points, got {v}"
        )));
    }
    let cells = invariant_cells(space);
    let mut offsets = Vec::with_capacity(cells.len());
    let mut offset = 0;
    for cell in &cells {
        offsets.push(offset);
        offset += cell.len();
    }
    let mut best: Option<CanonicalKey> = None;
    let mut hits = 0usize;
    let mut perm = vec![0usize; v];
    let mut key = Vec::with_capacity(space.b());
    let cell_perms = cells
        .iter()
        .map(|c| c.iter().copied().permutations(c.len()))
        .multi_cartesian_product();
    let mut visit = |orders: &[Vec<usize>]| {
        for (c, order) in orders.iter().enumerate() {
            for (slot, &x) in order.iter().enumerate() {
                perm[x] = offsets[c] + slot;
            }
        }
        key.clear();
        key.extend((0..space.b()).map(|j| pack(space, &perm, j)));
        key.sort_unstable();
        match &best {
            Some(b) if key > *b => {}
            Some(b) if key == *b => hits += 1,
            _ => {
                best = Some(key.clone());
                hits = 1;
            }
        }
    };
    if cells.is_empty() {
        visit(&[]);
    } else {
        for orders in cell_perms {
            visit(&orders);
        }
    }
    let key = best.expect("at least one permutation");
    Ok(CanonicalForm {
        space: space_from_key(space, &key),
        key,
        automorphisms: hits,
    })
}

fn space_from_key(space: &FuzzyLinearSpace, key: &[u128]) -> FuzzyLinearSpace {
    let v = space.v();
    let lat = space.lattice();
    let names = (1..=v).map(|i| i.to_string()).collect();
    let mut taken = HashSet::new();
    let lines = key
        .iter()
        .map(|&packed| {
            let values: Vec<_> = (0..v)
                .map(|x| {
                    let rank = (packed >> (RANK_BITS * (v - 1 - x))) as u32 & 0xffff;
                    lat.element(rank).expect("rank came from this lattice")
                })
                .collect();
            let support = values
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, _)| PointId(i))
                .collect();
            let name = line_name(support, &taken);
            taken.insert(name.clone());
            crate::space::FuzzyLine::new(name, values)
        })
        .collect();
    FuzzyLinearSpace::new(names, lat, lines).expect("canonical form is well-formed")
}

/// Minimum representative of the isomorphism class, with points renamed
/// `"1".."v"`.
pub fn canonicalize(space: &FuzzyLinearSpace) -> Result<FuzzyLinearSpace> {
    Ok(canonical_form(space)?.space)
}

#[derive(Debug, Clone)]
pub struct SkeletonClass {
    pub canonical: FuzzyLinearSpace,
    pub automorphisms: usize,
    /// Labeled skeletons found in this class by the search.
    pub labeled_found: usize,
}

impl SkeletonClass {
    /// `v! / |Aut|`, the orbit size under point relabeling.
    pub fn labeled_expected(&self) -> usize {
        factorial(self.canonical.v()) / self.automorphisms
    }
}

/// Skeletons up to isomorphism, sorted by canonical key.
pub fn skeleton_classes(v: usize, nontrivial_only: bool) -> Result<Vec<SkeletonClass>> {
    let skeletons: Vec<FuzzyLinearSpace> = enumerate_skeletons(v, nontrivial_only)?.collect();
    let forms: Vec<CanonicalForm> = skeletons
        .par_iter()
        .map(|s| canonical_form(s).expect("skeleton size checked"))
        .collect();
    let mut classes: BTreeMap<CanonicalKey, SkeletonClass> = BTreeMap::new();
    for form in forms {
        classes
            .entry(form.key)
            .or_insert_with(|| SkeletonClass {
                canonical: form.space,
                automorphisms: form.automorphisms,
                labeled_found: 0,
            })
            .labeled_found += 1;
    }
    Ok(classes.into_values().collect())
}

#[derive(Debug, Clone)]
pub struct Labelings {
    pub spaces: Vec<FuzzyLinearSpace>,
    /// Number of nonzero labelings of the skeleton.
    pub total: Count,
    /// True when `total` exceeded the cap and `spaces` is a seeded sample.
    pub sampled: bool,
}

/// Every assignment of nonzero values of `lat` to the supported positions of
/// `skeleton` (line-major, then point order), lexicographically; or a
/// deterministic uniform sample without replacement of `cap` of them when
/// there are more than `cap`.
pub fn enumerate_labelings(
    skeleton: &FuzzyLinearSpace,
    lat: ChainLattice,
    cap: usize,
    seed: u64,
) -> Result<Labelings> {
    let relabeled = skeleton.relabeled(lat, |_, _| 1)?;
    let total = space_cardinality(&relabeled);
    let positions: usize = skeleton.support_sizes().iter().sum();
    let radix = lat.nonzero_count();
    let exhaustive = total.to_u64().is_some_and(|t| t <= cap as u64);

    let digit_vectors: Vec<Vec<u32>> = if exhaustive {
        let mut out = Vec::new();
        let mut digits = vec![0u32; positions];
        'odometer: loop {
            out.push(digits.clone());
            let mut i = positions;
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radix {
                    break;
                }
                digits[i] = 0;
            }
        }
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = HashSet::with_capacity(cap);
        let mut out = Vec::with_capacity(cap);
        while out.len() < cap {
            let digits: Vec<u32> = (0..positions).map(|_| rng.gen_range(0..radix)).collect();
            if seen.insert(digits.clone()) {
                out.push(digits);
            }
        }
        out.sort_unstable();
        out
    };

    let spaces = digit_vectors
        .iter()
        .map(|digits| {
            let mut next = digits.iter();
            skeleton.relabeled(lat, |_, _| 1 + *next.next().expect("one digit per position"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Labelings {
        spaces,
        total,
        sampled: !exhaustive,
    })
}

/// Which clause a search or census looks for failures of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseSelector {
    One(Clause),
    All,
}

impl ClauseSelector {
    pub fn parse(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            Ok(ClauseSelector::All)
        } else {
            Clause::parse(s).map(ClauseSelector::One)
        }
    }

    pub fn fails(&self, verdict: &Verdict) -> bool {
        match self {
            ClauseSelector::One(c) => !verdict.clause_holds(*c),
            ClauseSelector::All => !verdict.holds(),
        }
    }
}

impl std::fmt::Display for ClauseSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClauseSelector::One(c) => write!(f, "{c}"),
            ClauseSelector::All => f.write_str("all"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    pub v: usize,
    pub labeled_skeletons: usize,
    pub classes: usize,
    /// Classes excluded because they fail the requested axiom set.
    pub skipped_by_axioms: usize,
    pub spaces_checked: usize,
    pub sampled: bool,
    /// Whether every class's labeled count equals `v! / |Aut|`.
    pub orbit_check: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub space: SpaceDocument,
    pub verdict: Verdict,
    pub failed: Vec<Clause>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CounterexampleReport {
    pub clause: String,
    pub axioms: String,
    pub lattice_n: u32,
    pub v_max: usize,
    pub cap: usize,
    pub stats: Vec<SearchStats>,
    pub counterexamples: Vec<Counterexample>,
}

impl CounterexampleReport {
    pub fn is_empty(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Runs the generalized checker over every nontrivial skeleton class with
/// `3 <= v <= v_max` (labelings per `cap`) and collects spaces where the
/// selected clause fails.
pub fn search_counterexamples(
    v_max: usize,
    lat: ChainLattice,
    clause: ClauseSelector,
    axioms: AxiomSet,
    cap: usize,
    seed: u64,
) -> Result<CounterexampleReport> {
    if v_max > MAX_POINTS {
        return Err(FlsError::invalid(format!(
            "v_max {v_max} exceeds the cap of {MAX_POINTS}"
        )));
    }
    let mut stats = Vec::new();
    let mut counterexamples = Vec::new();
    for v in MIN_POINTS..=v_max {
        let classes = skeleton_classes(v, true)?;
        let mut st = SearchStats {
            v,
            labeled_skeletons: classes.iter().map(|c| c.labeled_found).sum(),
            classes: classes.len(),
            skipped_by_axioms: 0,
            spaces_checked: 0,
            sampled: false,
            orbit_check: classes.iter().all(|c| c.labeled_found == c.labeled_expected()),
        };
        for (i, class) in classes.iter().enumerate() {
            if !class.canonical.validate(axioms).is_valid() {
                st.skipped_by_axioms += 1;
                continue;
            }
            let labelings = enumerate_labelings(&class.canonical, lat, cap, class_seed(seed, v, i))?;
            st.sampled |= labelings.sampled;
            let found: Vec<Option<Counterexample>> = labelings
                .spaces
                .par_iter()
                .map(|space| {
                    let verdict = check_generalized_dbe(space, axioms).ok()?;
                    clause.fails(&verdict).then(|| Counterexample {
                        space: SpaceDocument::from_space(space),
                        failed: verdict.failed_clauses(),
                        verdict,
                    })
                })
                .collect();
            st.spaces_checked += labelings.spaces.len();
            counterexamples.extend(found.into_iter().flatten());
        }
        stats.push(st);
    }
    Ok(CounterexampleReport {
        clause: clause.to_string(),
        axioms: axioms.to_string(),
        lattice_n: lat.n(),
        v_max,
        cap,
        stats,
        counterexamples,
    })
}

fn class_seed(seed: u64, v: usize, index: usize) -> u64 {
    seed ^ ((v as u64) << 32 | index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub points: usize,
    pub lattice: ChainLattice,
    pub nontrivial_only: bool,
    pub cap: usize,
    pub seed: u64,
    pub clause: Option<ClauseSelector>,
    pub axioms: AxiomSet,
}

impl CensusOptions {
    pub fn new(points: usize, lattice: ChainLattice) -> Self {
        CensusOptions {
            points,
            lattice,
            nontrivial_only: false,
            cap: DEFAULT_CAP,
            seed: 0,
            clause: None,
            axioms: AxiomSet::BASE,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusEntry {
    pub canonical_space: SpaceDocument,
    pub automorphism_count: usize,
    /// Absent when the space is outside the theorem's hypotheses (b = 1).
    pub verdict: Option<Verdict>,
    pub labeled_count: Count,
    /// Whether the labelings of this entry's skeleton were sampled.
    pub sampled: bool,
}

/// Isomorphism classes of labeled spaces on `points` points over the
/// lattice, with verdicts, in canonical order. With a clause selector only
/// the classes failing that clause are kept.
pub fn census(opts: &CensusOptions) -> Result<Vec<CensusEntry>> {
    let classes = skeleton_classes(opts.points, opts.nontrivial_only)?;
    let mut entries = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        if !class.canonical.validate(opts.axioms).is_valid() {
            continue;
        }
        let labelings = enumerate_labelings(
            &class.canonical,
            opts.lattice,
            opts.cap,
            class_seed(opts.seed, opts.points, i),
        )?;
        let forms: Vec<CanonicalForm> = labelings
            .spaces
            .par_iter()
            .map(|s| canonical_form(s).expect("point count checked"))
            .collect();
        let mut unique: BTreeMap<CanonicalKey, CanonicalForm> = BTreeMap::new();
        for form in forms {
            unique.entry(form.key.clone()).or_insert(form);
        }
        let built: Vec<Option<CensusEntry>> = unique
            .into_values()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|form| {
                let verdict = check_generalized_dbe(&form.space, opts.axioms).ok();
                if let Some(sel) = opts.clause {
                    if !verdict.as_ref().is_some_and(|v| sel.fails(v)) {
                        return None;
                    }
                }
                Some(CensusEntry {
                    canonical_space: SpaceDocument::from_space(&form.space),
                    automorphism_count: form.automorphisms,
                    labeled_count: Count::from((factorial(opts.points) / form.automorphisms) as u64),
                    verdict,
                    sampled: labelings.sampled,
                })
            })
            .collect();
        entries.extend(built.into_iter().flatten());
    }
    Ok(entries)
}

pub fn census_json(entries: &[CensusEntry]) -> String {
    let mut s = serde_json::to_string_pretty(entries).expect("census serializes");
    s.push('\n');
    s
}
