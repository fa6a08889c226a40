//! Decide whether a class of graphs of bounded linear clique-width is
//! labelled-well-quasi-ordered under the induced subgraph relation.
//!
//! The pipeline: an MSO interpretation over finite words is compiled into a
//! finite monoid with an edge selector ([`mso::interpretation_to_monoid`]);
//! words over that monoid denote vertex-ordered graphs ([`mlgraph::WordGraph`]);
//! the class is labelled-WQO exactly when the lengths of *bad forest paths*
//! (pumpable sequences of idempotent-evaluating graphs) are bounded, which a
//! regular-language construction decides ([`wqo::decide_wqo`]). On rejection
//! the same machinery produces verifiable witnesses: a pumpable bad-path
//! family and labelled antichains.
//!
//! Supporting theory lives beside it: Green's relations and totally ordered
//! monoids ([`monoid`]), Simon factorization forests ([`forest`]), and the
//! tree-model / gap-embedding order reflections ([`treemodel`], [`gap`]).

pub mod automata;
pub mod error;
pub mod forest;
pub mod gap;
pub mod json;
pub mod mlgraph;
pub mod monoid;
pub mod mso;
pub mod treemodel;
pub mod wqo;

pub use error::Error;
pub use monoid::{El, FiniteMonoid, GreenReport, MonoidMorphism};

/// Convenience alias used throughout: fallible operations return this.
pub type Result<T> = std::result::Result<T, Error>;
