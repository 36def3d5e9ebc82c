//! Exact labeling counts.
//!
//! The counts here are numbers of labelings, not numbers of points or
//! lines: a support of `k` points can carry `(n + 1)^k` assignments of
//! nonzero values from `L_n`, and a family of supports carries the product
//! of those. `spaceCardinality` is that product over all lines of a space.
//! Line counts are recovered from it by exact integer power testing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{FlsError, Result};
use crate::lattice::{meet_all, ChainLattice, LatticeElement};
use crate::space::{FuzzyLinearSpace, PointSet};

/// Default cap on the total number of positions the labeling oracle enumerates.
pub const ORACLE_POSITION_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Count(BigUint);

impl Count {
    pub fn zero() -> Self {
        Count(BigUint::zero())
    }

    pub fn one() -> Self {
        Count(BigUint::one())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        u64::try_from(&self.0).ok()
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl From<BigUint> for Count {
    fn from(v: BigUint) -> Self {
        Count(v)
    }
}

impl FromStr for Count {
    type Err = FlsError;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(FlsError::parse(
                format!("count {s:?}"),
                "expected a nonnegative decimal integer",
            ));
        }
        s.parse::<BigUint>()
            .map(Count)
            .map_err(|e| FlsError::parse(format!("count {s:?}"), e.to_string()))
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Serialized as a decimal string so large values stay exact.
impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

fn pow(base: u32, exp: usize) -> BigUint {
    let exp = u32::try_from(exp).expect("exponent fits in u32");
    BigUint::from(base).pow(exp)
}

/// Nonzero labelings of one fixed `k`-point support: `(n + 1)^k`.
pub fn count_k_fuzzy_line_labelings(k: usize, lat: ChainLattice) -> Count {
    Count(pow(lat.nonzero_count(), k))
}

/// Nonzero labelings of a family of supports with sizes `v_1..v_k`:
/// the product of `(n + 1)^{v_j}`.
pub fn count_k_fuzzy_point_configs(support_sizes: &[usize], lat: ChainLattice) -> Count {
    let total: usize = support_sizes.iter().sum();
    Count(pow(lat.nonzero_count(), total))
}

/// Number of nonzero relabelings of the space's incidence skeleton.
pub fn space_cardinality(space: &FuzzyLinearSpace) -> Count {
    count_k_fuzzy_point_configs(&space.support_sizes(), space.lattice())
}

/// Solves `(n + 1)^(b * v) = m` for the line count `b`.
pub fn infer_line_count(m: &Count, v: usize, lat: ChainLattice) -> Result<usize> {
    if lat.n() < 1 {
        return Err(FlsError::invalid(
            "line count inference needs n >= 1; every count over L_0 is 1",
        ));
    }
    if v < 1 {
        return Err(FlsError::invalid("support size must be at least 1"));
    }
    let base = BigUint::from(lat.nonzero_count());
    if m.0.is_zero() {
        return Err(FlsError::NoExactSolution(format!(
            "0 is not a power of {base}"
        )));
    }
    let mut rest = m.0.clone();
    let mut exponent = 0usize;
    while (&rest % &base).is_zero() {
        rest /= &base;
        exponent += 1;
    }
    if !rest.is_one() {
        // floor(log_base m): keep dividing the non-power remainder
        let mut floor = exponent;
        while rest >= base {
            rest /= &base;
            floor += 1;
        }
        return Err(FlsError::NoExactSolution(format!(
            "{m} is not a power of {base}; nearest exponents are {floor} and {}",
            floor + 1
        )));
    }
    if !exponent.is_multiple_of(v) {
        return Err(FlsError::NoExactSolution(format!(
            "{m} = {base}^{exponent}, and {exponent} is not divisible by support size {v}; \
             nearest line counts are {} and {}",
            exponent / v,
            exponent / v + 1
        )));
    }
    Ok(exponent / v)
}

/// Line count of a space recovered from its cardinality. Requires every
/// support to have the same size.
pub fn infer_line_count_for_space(space: &FuzzyLinearSpace) -> Result<usize> {
    let sizes = space.support_sizes();
    let Some(&first) = sizes.first() else {
        return infer_line_count(&space_cardinality(space), 1, space.lattice());
    };
    if let Some(&other) = sizes.iter().find(|&&s| s != first) {
        return Err(FlsError::NoExactSolution(format!(
            "supports are not uniform (sizes {first} and {other}), so no single support size divides the exponent"
        )));
    }
    infer_line_count(&space_cardinality(space), first, space.lattice())
}

/// Enumerates every assignment of nonzero lattice values to every position of
/// every support, confirms each support's meet is nonzero, and counts.
/// The enumeration is split across rayon workers; the total does not depend
/// on the split.
pub fn labeling_oracle(supports: &[PointSet], lat: ChainLattice, bound: usize) -> Result<Count> {
    let positions: usize = supports.iter().map(PointSet::len).sum();
    if positions > bound {
        return Err(FlsError::ResourceLimit {
            what: "labeling oracle positions",
            actual: positions,
            limit: bound,
        });
    }
    let nonzero: Vec<LatticeElement> = lat.nonzero_elements().collect();
    let mut spans = Vec::with_capacity(supports.len());
    let mut start = 0;
    for s in supports {
        spans.push(start..start + s.len());
        start += s.len();
    }
    // workers take disjoint blocks of assignments, keyed by the leading digits
    let fixed = positions.min(3);
    let blocks = nonzero.len().pow(fixed as u32);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut prefix = vec![0usize; fixed];
            let mut rest = block;
            for d in prefix.iter_mut().rev() {
                *d = rest % nonzero.len();
                rest /= nonzero.len();
            }
            count_block(&prefix, positions, &nonzero, &spans, lat)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(Count::from(counts.into_iter().sum::<u64>()))
}

/// Counts assignments whose leading digits equal `prefix`.
fn count_block(
    prefix: &[usize],
    positions: usize,
    nonzero: &[LatticeElement],
    spans: &[std::ops::Range<usize>],
    lat: ChainLattice,
) -> Result<u64> {
    let mut digits = vec![0usize; positions];
    digits[..prefix.len()].copy_from_slice(prefix);
    let mut values: Vec<LatticeElement> = digits.iter().map(|&d| nonzero[d]).collect();
    let mut count: u64 = 0;
    loop {
        let mut all_nonzero = true;
        for span in spans {
            if meet_all(lat, values[span.clone()].iter().copied())?.is_zero() {
                all_nonzero = false;
                break;
            }
        }
        if all_nonzero {
            count += 1;
        }
        // odometer over the free positions, last position fastest
        let mut i = positions;
        loop {
            if i == prefix.len() {
                return Ok(count);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < nonzero.len() {
                values[i] = nonzero[digits[i]];
                break;
            }
            digits[i] = 0;
            values[i] = nonzero[0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn l(n: u32) -> ChainLattice {
        ChainLattice::new(n).unwrap()
    }

    fn supports(sizes: &[usize]) -> Vec<PointSet> {
        sizes.iter().map(|&k| PointSet::full(k)).collect()
    }

    #[test]
    fn line_labeling_examples() {
        assert_eq!(count_k_fuzzy_line_labelings(2, l(1)), Count::from(4));
        for n in 0..4 {
            assert_eq!(count_k_fuzzy_line_labelings(0, l(n)), Count::one());
        }
        assert_eq!(count_k_fuzzy_line_labelings(3, l(2)), Count::from(27));
    }

    #[test]
    fn point_config_examples() {
        assert_eq!(count_k_fuzzy_point_configs(&[2, 2], l(1)), Count::from(16));
        assert_eq!(count_k_fuzzy_point_configs(&[], l(3)), Count::one());
        assert_eq!(count_k_fuzzy_point_configs(&[2, 2, 2], l(1)), Count::from(64));
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(space_cardinality(&fixtures::example2_l1()), Count::from(64));
        assert_eq!(space_cardinality(&fixtures::example2()), Count::one());
        let np = fixtures::near_pencil(4).relabeled(l(1), |_, _| 2).unwrap();
        assert_eq!(space_cardinality(&np), Count::from(512));
    }

    #[test]
    fn infer_examples() {
        assert_eq!(infer_line_count(&Count::from(64), 2, l(1)).unwrap(), 3);
        assert_eq!(
            infer_line_count(&space_cardinality(&fixtures::example2_l1()), 2, l(1)).unwrap(),
            3
        );
        assert_eq!(infer_line_count(&Count::one(), 2, l(1)).unwrap(), 0);
        let err = infer_line_count(&Count::from(65), 2, l(1)).unwrap_err();
        assert!(matches!(err, FlsError::NoExactSolution(_)));
        assert!(err.to_string().contains("6 and 7"), "{err}");
        let err = infer_line_count(&Count::from(32), 2, l(1)).unwrap_err();
        assert!(matches!(err, FlsError::NoExactSolution(_)));
        assert!(infer_line_count(&Count::zero(), 2, l(1)).is_err());
        assert!(matches!(
            infer_line_count(&Count::from(1), 2, l(0)),
            Err(FlsError::InvalidArgument(_))
        ));
    }

    #[test]
    fn infer_for_space() {
        let fano = fixtures::fano().relabeled(l(2), |_, _| 3).unwrap();
        assert_eq!(infer_line_count_for_space(&fano).unwrap(), 7);
        let np = fixtures::near_pencil(5).relabeled(l(1), |_, _| 1).unwrap();
        assert!(matches!(
            infer_line_count_for_space(&np),
            Err(FlsError::NoExactSolution(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let b = ORACLE_POSITION_BOUND;
        assert_eq!(labeling_oracle(&supports(&[2]), l(1), b).unwrap(), Count::from(4));
        assert_eq!(labeling_oracle(&supports(&[2, 2, 2]), l(1), b).unwrap(), Count::from(64));
        assert_eq!(labeling_oracle(&supports(&[3, 2, 4]), l(0), b).unwrap(), Count::one());
        assert_eq!(labeling_oracle(&[], l(2), b).unwrap(), Count::one());
        assert!(matches!(
            labeling_oracle(&supports(&[20, 5]), l(1), b),
            Err(FlsError::ResourceLimit { actual: 25, limit: 24, .. })
        ));
    }

    #[test]
    fn big_counts_are_exact() {
        let c = count_k_fuzzy_point_configs(&[40, 40], l(3));
        assert_eq!(c.to_string(), BigUint::from(4u32).pow(80).to_string());
        assert_eq!(infer_line_count(&c, 40, l(3)).unwrap(), 2);
        assert_eq!("123".parse::<Count>().unwrap(), Count::from(123));
        assert!("-1".parse::<Count>().is_err());
    }
}
