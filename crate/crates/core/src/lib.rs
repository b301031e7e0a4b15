//! Breaking-path analysis for group varieties over finite directed
//! multigraphs.
//!
//! For a connected multigraph and a group variety, every path class (an
//! arrow of the free category: endpoints plus the net edge exponents the
//! variety distinguishes) gets assigned a shrinking chain of subgraphs:
//! the atoms no realization can avoid, refined level by level through all
//! factorizations of the arrow. A *breaking path* is a path whose arrow
//! eventually loses its own destination from the connected piece anchored
//! at its source; a graph *holds* for the variety when no arrow breaks,
//! and the stabilized per-arrow subgraphs then form a dual premorphism
//! into the semilattice of connected subgraphs.
//!
//! The crate ships:
//! * [`graph`] — multigraphs, bitset subgraphs, bridges, edit operations;
//! * [`paths`] — words over the doubled edge alphabet;
//! * [`variety`] — arrow values, composition, enumeration, realizability;
//! * [`content`] — exact level-0 subgraphs and a brute-force oracle;
//! * [`fixpoint`] — the refinement engine and verdicts for locally finite
//!   varieties (trivial, Abelian of exponent n);
//! * [`cert`] — finite certificates for breaking paths over the free
//!   Abelian variety, where enumeration is impossible;
//! * [`minors`] — minor containment, the two-graph forbidden catalog, the
//!   structural classifier and path transport along minor operations;
//! * [`fixtures`] — small named graphs shared by tests and documentation.

pub mod cert;
pub mod content;
pub mod error;
pub mod fixpoint;
pub mod fixtures;
pub mod graph;
pub mod minors;
pub mod oracle;
pub mod paths;
pub mod variety;

pub use error::{Error, Result};
pub use graph::{Atom, AtomSet, EdgeId, EditOp, Graph, GraphFile, Remap, Subgraph, VertexId};
pub use paths::{PathWord, Sign, Step};
pub use variety::{enumerate_values, realizable_in, realize_value, ArrowValue, VarietySpec};
