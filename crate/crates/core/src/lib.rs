//! Conditional-independence reasoning over dependency models and graphs.
//!
//! A dependency model is a set of statements `I(X, Z, Y)`, read "knowing `Z`
//! renders `X` and `Y` independent". This crate provides:
//!
//! * closure of a model under the semi-graphoid axioms (symmetry,
//!   decomposition, weak union, contraction), optionally with intersection,
//!   together with replayable derivation traces ([`axioms`]);
//! * stratified protocols (causal input lists) and their compilation to DAGs,
//!   minimal tail boundaries and per-triplet witness protocols ([`protocol`]);
//! * d-separation (a definitional path-enumeration oracle and a linear-time
//!   reachability search), ID-separation for DAGs with deterministic nodes,
//!   undirected separation and the minimal undirected I-map of a graphoid
//!   ([`separation`]);
//! * plain-text formats for graphs, models and protocols plus DOT export
//!   ([`text`], [`dot`]).
//!
//! Variables live in a [`Universe`] of at most 64 names so that a [`VarSet`]
//! is a single machine word.

pub mod axioms;
pub mod dot;
mod error;
pub mod graph;
pub mod model;
pub mod protocol;
pub mod random;
pub mod separation;
pub mod text;
mod triplet;
mod var;

pub use axioms::{AxiomName, DerivationTrace, Mode, Step};
pub use error::{Error, Result};
pub use graph::{Dag, UndirectedGraph};
pub use model::DependencyModel;
pub use protocol::{IndependenceOracle, StratifiedProtocol, Violation};
pub use separation::{AdjacencyPath, DsepOracle, SeparationQuery};
pub use triplet::{canonical, Triplet};
pub use var::{Universe, VarId, VarSet, MAX_VARS};
