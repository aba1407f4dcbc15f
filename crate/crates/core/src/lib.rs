//! Rank-based complementation of Büchi automata.
//!
//! The complement is built from tight rankings, and the rankings are pruned
//! by an upper bound on the ranks that rejecting runs can need. Bounds come
//! from a component analysis of elevator automata, from propagation over the
//! subset graph, or from the classical state-count bound.

pub mod automaton;
pub mod complement;
pub mod elevator;
pub mod fixtures;
pub mod hoa;
pub mod oracle;
pub mod pipeline;
pub mod propagation;
pub mod ranking;
pub mod scc;
pub mod stateset;

pub use automaton::{Alphabet, AutomatonError, Ba, BaBuilder, Edge, Symbol};
pub use stateset::StateSet;
