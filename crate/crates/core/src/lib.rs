//! Verification and enumeration workbench for finite fuzzy linear spaces
//! over chain lattices.
//!
//! * [`lattice`]: chain lattices `L_n` and their elements.
//! * [`space`]: the space model, axiom validation, incidence queries.
//! * [`closure`]: the closure operator under both quantifier readings.
//! * [`classify`]: k-fuzzy points and lines.
//! * [`counting`]: exact labeling counts, line-count inference, oracles.
//! * [`theorems`]: classical and generalized de Bruijn–Erdős checkers.
//! * [`enumerate`]: skeleton search, canonical forms, labelings, census.
//! * [`io`]: JSON documents.
//! * [`cli`]: the `fls` command line.

pub mod classify;
pub mod cli;
pub mod closure;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lattice;
pub mod space;
pub mod theorems;

pub use error::{FlsError, Result};
pub use lattice::{ChainLattice, LatticeElement};
pub use space::{AxiomSet, FuzzyLine, FuzzyLinearSpace, PointId, PointSet};
