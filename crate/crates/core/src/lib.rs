//! Crystal combinatorics for type D.
//!
//! The crystals `B(n·w1)` (highest weight a multiple of the first fundamental
//! weight) are realized in two models: one-row tableaux over the alphabet
//! `1 < 2 < ... < m-1 < {m, m-bar} < ... < 1-bar`, and reverse plane
//! partitions over the heap of the minuscule coset word. On top of the models
//! sit combinatorial toggles and the cactus-group action computed through
//! partial Schützenberger involutions, together with an exhaustive verifier
//! that checks every identity relating the two at configurable rank/height.

pub mod cactus;
pub mod crystal;
pub mod heap;
pub mod tableau;
pub mod verify;
pub mod weyl;

pub use crystal::{CrystalGraph, StringStats};
pub use weyl::{DynkinDiagram, NodeSet, Weight, WeylWord};
