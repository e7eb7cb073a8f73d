//! Matching book embeddings of Cartesian graph bundles over two cycles.
//!
//! A bundle `C_s □^φ C_t` takes `s` copies of the cycle `C_t` (fibers),
//! joins consecutive copies by rungs, and closes the base cycle with a seam
//! twisted by the automorphism `φ` (a shift or a reflection of `C_t`).
//! This crate builds those graphs, lays them out with explicit optimal
//! matching book embeddings, reduces coprime shifts to circulants, and
//! checks everything with an independent validator and exhaustive search.

pub mod bundle;
pub mod complete;
pub mod constructions;
pub mod decomp;
pub mod diophantine;
pub mod error;
pub mod exec;
pub mod graph;
pub mod io;
pub mod layout;
pub mod oracle;
pub mod reduction;
pub mod render;
pub mod sweep;

pub use bundle::{bundle, Automorphism, BundleSpec, BundleVertex, ReflectionKind};
pub use constructions::{embed, ConstructionResult, Embedded, Unsupported};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{circulant, cycle_graph, Edge, Graph};
pub use layout::{chords_cross, classify, validate, BookEmbedding, CircularLayout, ValidationReport};
pub use oracle::{brute_force_mbt, certify, check_isomorphism, lower_bound, MbtResult, MbtValue, SearchBudget};
pub use reduction::{to_circulant, CirculantReduction};
