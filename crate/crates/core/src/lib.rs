//! Invariants of orbits of a symmetric subgroup on a flag variety, computed
//! from the combinatorics of the orbit set: the Weyl group with its Bruhat
//! order and Demazure product, the KGB graph, the closure order on orbits,
//! the sets `W`, `Y`, `Z` attached to a pair of orbits, and admissible paths.

pub mod coxeter;
pub mod kgb;
pub mod models;
pub mod order;
pub mod invariants;
pub mod paths;
pub mod io;

pub use coxeter::{CoxeterError, CoxeterSystem, Generator, WeylElement};
pub use kgb::{KgbGraph, OrbitId, OrbitRecord, RootStatus, ValidationReport};
pub use models::{ClanModel, DiagonalModel};
pub use order::OrbitPoset;
