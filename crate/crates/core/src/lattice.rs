//! Finite chain lattices `0 < a1 < ... < an < 1`.
//!
//! Elements are stored by rank: `0` has rank 0, `ai` has rank `i`, and the
//! top element `1` has rank `n + 1`. Meet is the minimum rank and join the
//! maximum, so a meet is nonzero exactly when every operand is nonzero.

use std::fmt;

use crate::error::{FlsError, Result};

/// Largest supported number of intermediate elements.
pub const MAX_INTERMEDIATE: u32 = u16::MAX as u32 - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainLattice {
    n: u32,
}

impl ChainLattice {
    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_INTERMEDIATE {
            return Err(FlsError::invalid(format!(
                "lattice with {n} intermediate elements exceeds the supported maximum {MAX_INTERMEDIATE}"
            )));
        }
        Ok(ChainLattice { n })
    }

    /// The two-element lattice `{0, 1}`.
    pub const fn crisp() -> Self {
        ChainLattice { n: 0 }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_crisp(&self) -> bool {
        self.n == 0
    }

    /// `|L| = n + 2`.
    pub fn size(&self) -> u32 {
        self.n + 2
    }

    /// Number of elements other than `0`, i.e. `|L| - 1 = n + 1`.
    pub fn nonzero_count(&self) -> u32 {
        self.n + 1
    }

    pub fn bottom(&self) -> LatticeElement {
        LatticeElement { rank: 0, n: self.n }
    }

    pub fn top(&self) -> LatticeElement {
        LatticeElement {
            rank: self.n + 1,
            n: self.n,
        }
    }

    pub fn element(&self, rank: u32) -> Result<LatticeElement> {
        if rank > self.n + 1 {
            return Err(FlsError::invalid(format!(
                "rank {rank} outside lattice L_{} (max rank {})",
                self.n,
                self.n + 1
            )));
        }
        Ok(LatticeElement { rank, n: self.n })
    }

    pub fn contains(&self, e: LatticeElement) -> bool {
        e.n == self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = LatticeElement> + '_ {
        (0..=self.n + 1).map(move |rank| LatticeElement { rank, n: self.n })
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = LatticeElement> + '_ {
        (1..=self.n + 1).map(move |rank| LatticeElement { rank, n: self.n })
    }

    /// Parses one of `0`, `1`, `a1` ... `an`.
    pub fn parse_token(&self, s: &str) -> Result<LatticeElement> {
        let err = |why: &str| FlsError::parse(format!("token {s:?}"), why.to_string());
        match s {
            "0" => Ok(self.bottom()),
            "1" => Ok(self.top()),
            _ => {
                let digits = s
                    .strip_prefix('a')
                    .ok_or_else(|| err("expected 0, 1 or a<index>"))?;
                if digits.is_empty()
                    || digits.starts_with('0')
                    || !digits.bytes().all(|b| b.is_ascii_digit())
                {
                    return Err(err("index must be a positive integer without leading zeros"));
                }
                let index: u32 = digits
                    .parse()
                    .map_err(|_| err("index out of range"))?;
                if index > self.n {
                    return Err(err(&format!(
                        "index {index} exceeds lattice size n = {}",
                        self.n
                    )));
                }
                Ok(LatticeElement {
                    rank: index,
                    n: self.n,
                })
            }
        }
    }

    pub fn format_token(&self, e: LatticeElement) -> String {
        e.to_string()
    }
}

impl fmt::Display for ChainLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}", self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeElement {
    rank: u32,
    n: u32,
}

impl LatticeElement {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn lattice(&self) -> ChainLattice {
        ChainLattice { n: self.n }
    }

    /// True for the bottom element.
    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_top(&self) -> bool {
        self.rank == self.n + 1
    }

    fn same_lattice(self, other: LatticeElement, op: &str) -> Result<()> {
        if self.n != other.n {
            return Err(FlsError::invalid(format!(
                "{op} of elements from different lattices L_{} and L_{}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn meet(self, other: LatticeElement) -> Result<LatticeElement> {
        self.same_lattice(other, "meet")?;
        Ok(if self.rank <= other.rank { self } else { other })
    }

    pub fn join(self, other: LatticeElement) -> Result<LatticeElement> {
        self.same_lattice(other, "join")?;
        Ok(if self.rank >= other.rank { self } else { other })
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank == 0 {
            f.write_str("0")
        } else if self.rank == self.n + 1 {
            f.write_str("1")
        } else {
            write!(f, "a{}", self.rank)
        }
    }
}

/// Meet of an arbitrary collection; the empty meet is `top`.
pub fn meet_all<I>(lat: ChainLattice, items: I) -> Result<LatticeElement>
where
    I: IntoIterator<Item = LatticeElement>,
{
    items.into_iter().try_fold(lat.top(), |acc, e| acc.meet(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::iproduct;

    fn l(n: u32) -> ChainLattice {
        ChainLattice::new(n).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(l(0).size(), 2);
        assert_eq!(l(3).size(), 5);
        assert_eq!(l(3).nonzero_count(), 4);
        assert_eq!(l(2).elements().count(), 4);
        assert!(ChainLattice::new(MAX_INTERMEDIATE + 1).is_err());
    }

    #[test]
    fn meet_examples() {
        let l1 = l(1);
        let a1 = l1.parse_token("a1").unwrap();
        assert_eq!(a1.meet(l1.top()).unwrap(), a1);
        assert_eq!(l1.bottom().meet(l1.top()).unwrap(), l1.bottom());
        let l3 = l(3);
        let a2 = l3.parse_token("a2").unwrap();
        let a3 = l3.parse_token("a3").unwrap();
        assert_eq!(a2.meet(a3).unwrap(), a2);
    }

    #[test]
    fn join_examples() {
        let l1 = l(1);
        let a1 = l1.element(1).unwrap();
        assert_eq!(a1.join(l1.top()).unwrap(), l1.top());
        assert_eq!(l1.bottom().join(a1).unwrap(), a1);
        let l3 = l(3);
        assert_eq!(
            l3.element(2).unwrap().join(l3.element(3).unwrap()).unwrap(),
            l3.element(3).unwrap()
        );
    }

    #[test]
    fn mixed_lattice_rejected() {
        let a = l(1).top();
        let b = l(2).top();
        assert!(matches!(a.meet(b), Err(FlsError::InvalidArgument(_))));
        assert!(matches!(a.join(b), Err(FlsError::InvalidArgument(_))));
    }

    #[test]
    fn parse_examples() {
        let l1 = l(1);
        assert_eq!(l1.parse_token("a1").unwrap().rank(), 1);
        assert_eq!(l1.parse_token("1").unwrap().rank(), 2);
        let err = l1.parse_token("a2").unwrap_err();
        assert!(err.to_string().contains("a2"), "{err}");
        for bad in ["", "a", "a0", "a01", "A1", "2", "a1 ", "b1", "-1"] {
            assert!(l(5).parse_token(bad).is_err(), "{bad:?} accepted");
        }
        assert_eq!(l(0).parse_token("1").unwrap().rank(), 1);
    }

    #[test]
    fn token_round_trip() {
        for n in 0..6 {
            let lat = l(n);
            for e in lat.elements() {
                let s = lat.format_token(e);
                assert_eq!(lat.parse_token(&s).unwrap(), e);
                assert_eq!(lat.format_token(lat.parse_token(&s).unwrap()), s);
            }
        }
    }

    #[test]
    fn lattice_laws_exhaustive() {
        for n in 0..=4 {
            let lat = l(n);
            let els: Vec<_> = lat.elements().collect();
            for (&a, &b) in iproduct!(&els, &els) {
                assert_eq!(a.meet(b).unwrap(), b.meet(a).unwrap());
                assert_eq!(a.join(b).unwrap(), b.join(a).unwrap());
                assert_eq!(a.meet(a).unwrap(), a);
                assert_eq!(a.join(a).unwrap(), a);
                assert_eq!(a.meet(b).unwrap().is_zero(), a.is_zero() || b.is_zero());
                // absorption
                assert_eq!(a.meet(a.join(b).unwrap()).unwrap(), a);
            }
            for (&a, &b, &c) in iproduct!(&els, &els, &els) {
                assert_eq!(
                    a.meet(b.meet(c).unwrap()).unwrap(),
                    a.meet(b).unwrap().meet(c).unwrap()
                );
                assert_eq!(
                    a.join(b.join(c).unwrap()).unwrap(),
                    a.join(b).unwrap().join(c).unwrap()
                );
            }
        }
    }

    #[test]
    fn empty_meet_is_top() {
        let lat = l(2);
        assert_eq!(meet_all(lat, []).unwrap(), lat.top());
        assert!(meet_all(lat, lat.elements()).unwrap().is_zero());
        assert!(!meet_all(lat, lat.nonzero_elements()).unwrap().is_zero());
    }
}
