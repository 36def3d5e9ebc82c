//! The closure operator `<X>` on point sets.
//!
//! The defining condition asks for a line whose meet over points of `X`
//! together with a candidate point is nonzero, quantified over subsets of
//! `X` with at least two points. The quantifier over those subsets admits two
//! readings, both provided:
//!
//! * [`ClosureMode::ExistsSubset`]: some subset `T` of `X` with `|T| >= 2`
//!   lies on a common line with `x`. Equivalently, `x` is on a line that
//!   meets `X` in at least two points.
//! * [`ClosureMode::ForallSubsets`]: every such subset lies on a common line
//!   with `x`. Equivalently, `X` together with `x` lies on a single line.
//!
//! Sets with at most one point are their own closure in both modes.
//! `ExistsSubset` is the default: it is the reading under which `<N> = N`
//! and the closure of a pair is the line through it.

use std::fmt;
use std::str::FromStr;

use crate::error::{FlsError, Result};
use crate::lattice::meet_all;
use crate::space::{FuzzyLinearSpace, PointId, PointSet};

/// Largest `|X|` the literal oracle will enumerate subsets of.
pub const ORACLE_SUBSET_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ClosureMode {
    #[default]
    ExistsSubset,
    ForallSubsets,
}

impl FromStr for ClosureMode {
    type Err = FlsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exists" => Ok(ClosureMode::ExistsSubset),
            "forall" => Ok(ClosureMode::ForallSubsets),
            _ => Err(FlsError::invalid(format!(
                "unknown closure mode {s:?}, expected exists or forall"
            ))),
        }
    }
}

impl fmt::Display for ClosureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureMode::ExistsSubset => "exists",
            ClosureMode::ForallSubsets => "forall",
        })
    }
}

fn check_subset(space: &FuzzyLinearSpace, x: PointSet) -> Result<()> {
    if !x.is_subset(space.all_points()) {
        return Err(FlsError::invalid(format!(
            "point set {:#b} is not contained in the {} points of the space",
            x.bits(),
            space.v()
        )));
    }
    Ok(())
}

pub fn closure(space: &FuzzyLinearSpace, x: PointSet, mode: ClosureMode) -> Result<PointSet> {
    check_subset(space, x)?;
    if x.len() <= 1 {
        return Ok(x);
    }
    let supports = space.supports().iter();
    let result = match mode {
        ClosureMode::ExistsSubset => supports
            .filter(|s| s.intersection(x).len() >= 2)
            .fold(PointSet::EMPTY, |acc, s| acc.union(*s)),
        // a line through all of X covers every subset of X at once
        ClosureMode::ForallSubsets => supports
            .filter(|s| x.is_subset(**s))
            .fold(PointSet::EMPTY, |acc, s| acc.union(*s)),
    };
    Ok(result)
}

/// Evaluates the quantified definition literally: every subset `T` of `X`
/// with `|T| >= 2`, every line, every candidate point, with the lattice
/// meet computed value by value. Sets with at most one point follow the
/// same identity convention as [`closure`].
pub fn closure_oracle(
    space: &FuzzyLinearSpace,
    x: PointSet,
    mode: ClosureMode,
    bound: usize,
) -> Result<PointSet> {
    check_subset(space, x)?;
    if x.len() > bound {
        return Err(FlsError::ResourceLimit {
            what: "closure oracle subset size",
            actual: x.len(),
            limit: bound,
        });
    }
    if x.len() <= 1 {
        return Ok(x);
    }
    let lat = space.lattice();
    let subsets: Vec<PointSet> = x.subsets().filter(|t| t.len() >= 2).collect();
    let on_common_line = |t: PointSet, p: PointId| -> Result<bool> {
        for d in space.lines() {
            let values = t.iter().map(|q| d.value(q)).chain([d.value(p)]);
            if !meet_all(lat, values)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let mut result = PointSet::EMPTY;
    for p in space.points() {
        let member = match mode {
            ClosureMode::ExistsSubset => {
                let mut any = false;
                for &t in &subsets {
                    if on_common_line(t, p)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            ClosureMode::ForallSubsets => {
                let mut all = true;
                for &t in &subsets {
                    if !on_common_line(t, p)? {
                        all = false;
                        break;
                    }
                }
                all
            }
        };
        if member {
            result.insert(p);
        }
    }
    Ok(result)
}

/// Whether `X` generates `B`, i.e. `<X> = B`.
pub fn generates(
    space: &FuzzyLinearSpace,
    x: PointSet,
    b: PointSet,
    mode: ClosureMode,
) -> Result<bool> {
    Ok(closure(space, x, mode)? == b)
}

/// Whether `<<X>> = <X>` holds for every two-point `X` in the default mode.
pub fn idempotent_on_pairs(space: &FuzzyLinearSpace) -> bool {
    let v = space.v();
    (0..v).all(|i| {
        (i + 1..v).all(|k| {
            let x = PointSet::singleton(PointId(i)).union(PointSet::singleton(PointId(k)));
            let once = closure(space, x, ClosureMode::ExistsSubset).expect("pair is in range");
            let twice = closure(space, once, ClosureMode::ExistsSubset).expect("closure is in range");
            once == twice
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::space::AxiomSet;

    const MODES: [ClosureMode; 2] = [ClosureMode::ExistsSubset, ClosureMode::ForallSubsets];

    fn set(s: &FuzzyLinearSpace, names: &[&str]) -> PointSet {
        s.set_from_names(names).unwrap()
    }

    #[test]
    fn example2_identities() {
        let s = fixtures::example2();
        for mode in MODES {
            assert_eq!(closure(&s, PointSet::EMPTY, mode).unwrap(), PointSet::EMPTY);
            let x = set(&s, &["x"]);
            assert_eq!(closure(&s, x, mode).unwrap(), x);
            let xy = set(&s, &["x", "y"]);
            assert_eq!(closure(&s, xy, mode).unwrap(), s.supports()[0]);
        }
    }

    #[test]
    fn example2_full_set_by_mode() {
        let s = fixtures::example2();
        let all = s.all_points();
        assert_eq!(closure(&s, all, ClosureMode::ExistsSubset).unwrap(), all);
        assert_eq!(closure(&s, all, ClosureMode::ForallSubsets).unwrap(), PointSet::EMPTY);
    }

    #[test]
    fn oracle_examples() {
        let s = fixtures::example2();
        let yz = set(&s, &["y", "z"]);
        let xz = set(&s, &["x", "z"]);
        let m = ClosureMode::ExistsSubset;
        assert_eq!(closure_oracle(&s, yz, m, ORACLE_SUBSET_BOUND).unwrap(), yz);
        assert_eq!(closure_oracle(&s, xz, m, ORACLE_SUBSET_BOUND).unwrap(), xz);
        for x in s.all_points().subsets() {
            for mode in MODES {
                assert_eq!(
                    closure(&s, x, mode).unwrap(),
                    closure_oracle(&s, x, mode, ORACLE_SUBSET_BOUND).unwrap()
                );
            }
        }
    }

    #[test]
    fn oracle_bound() {
        let s = fixtures::fano();
        let err = closure_oracle(&s, s.all_points(), ClosureMode::ExistsSubset, 4).unwrap_err();
        assert!(matches!(err, FlsError::ResourceLimit { actual: 7, limit: 4, .. }));
    }

    #[test]
    fn rejects_foreign_points() {
        let s = fixtures::example2();
        assert!(closure(&s, PointSet::from_bits(0b1000), ClosureMode::ExistsSubset).is_err());
    }

    #[test]
    fn fano_line_closure() {
        let s = fixtures::fano();
        let x = set(&s, &["1", "2"]);
        assert_eq!(closure(&s, x, ClosureMode::ExistsSubset).unwrap(), set(&s, &["1", "2", "4"]));
        // three non-collinear points reach every line through two of them
        let tri = set(&s, &["1", "2", "3"]);
        assert_eq!(
            closure(&s, tri, ClosureMode::ExistsSubset).unwrap(),
            set(&s, &["1", "2", "3", "4", "5", "7"])
        );
        assert_eq!(closure(&s, tri, ClosureMode::ForallSubsets).unwrap(), PointSet::EMPTY);
    }

    #[test]
    fn properties_on_corpus() {
        for (_, s) in fixtures::corpus() {
            assert!(s.validate(AxiomSet::BASE).is_valid());
            let all = s.all_points();
            assert_eq!(closure(&s, all, ClosureMode::ExistsSubset).unwrap(), all);
            assert!(idempotent_on_pairs(&s));
            let subsets: Vec<PointSet> = all.subsets().filter(|x| x.len() >= 2).collect();
            for &x in &subsets {
                let ex = closure(&s, x, ClosureMode::ExistsSubset).unwrap();
                let fa = closure(&s, x, ClosureMode::ForallSubsets).unwrap();
                assert!(x.is_subset(ex));
                assert!(fa.is_subset(ex));
            }
            // monotone on a sample of nested pairs
            for &x in subsets.iter().take(40) {
                for &y in subsets.iter().filter(|y| x.is_subset(**y)).take(10) {
                    let cx = closure(&s, x, ClosureMode::ExistsSubset).unwrap();
                    let cy = closure(&s, y, ClosureMode::ExistsSubset).unwrap();
                    assert!(cx.is_subset(cy));
                }
            }
        }
    }

    #[test]
    fn generates_line() {
        let s = fixtures::example2();
        assert!(generates(&s, set(&s, &["x", "y"]), s.supports()[0], ClosureMode::ExistsSubset).unwrap());
        assert!(!generates(&s, set(&s, &["x", "y"]), s.all_points(), ClosureMode::ExistsSubset).unwrap());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("exists".parse::<ClosureMode>().unwrap(), ClosureMode::ExistsSubset);
        assert_eq!("forall".parse::<ClosureMode>().unwrap(), ClosureMode::ForallSubsets);
        assert!("any".parse::<ClosureMode>().is_err());
    }
}
