//! Finite posets and lattices: level classes, heights and antichain
//! cutsets.
//!
//! The central fact checked here is that in a semimodular lattice the
//! antichain cutsets (sets meeting every maximal chain exactly once) are
//! precisely the level classes, the classes of the equivalence generated
//! by "covers a common element". [`cutsets::verify_theorem`] compares the
//! two families directly; [`cutsets::level_chain_intersection`] and
//! [`cutsets::proof_witness_chain`] construct the witnesses behind each
//! direction.

pub mod cli;
pub mod cutsets;
pub mod error;
pub mod generators;
pub mod io;
pub mod lattice;
pub mod levels;
pub mod poset;

pub use error::{Error, Result};
pub use poset::{build_poset, Chain, FinitePoset};
