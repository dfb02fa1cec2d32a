//! Isolation schemes for problems on decomposable graphs.
//!
//! A weight function `ω` *isolates* a set family when exactly one member
//! attains the minimum total weight. This crate implements randomness-efficient
//! isolation schemes for Hamiltonian cycles (general graphs, bounded treewidth,
//! separable classes), maximum independent sets and maximum matchings (both
//! level-aware over an elimination forest), together with the machinery needed
//! to check them at desk scale:
//!
//! * graph/decomposition types and their validators ([`graph`], [`forest`],
//!   [`td`], [`tree`], [`gef`]),
//! * exhaustive solution-family enumerators and the configuration calculus for
//!   partial Hamiltonian-cycle solutions ([`solutions`]),
//! * GF(2) rank of the matching compatibility matrix and the induced bound on
//!   minimum-weight compliant solutions ([`rankbased`]),
//! * number-theoretic support: primality, uniform prime sampling, group
//!   generators, finite-field DFT coefficient extraction, CRT ([`numt`]),
//! * trial harnesses that turn schemes plus enumerators into success rates
//!   ([`verify`]),
//! * adversarial lower-bound instance generators ([`lowerbounds`]),
//! * a derandomized Hamiltonicity driver over a pluggable detector
//!   ([`solver`]).
//!
//! Everything is deterministic given a seed; see [`rng`] for the stream
//!-splitting contract.

pub mod error;
pub mod forest;
pub mod gef;
pub mod graph;
pub mod lowerbounds;
pub mod numt;
pub mod rankbased;
pub mod rng;
pub mod schemes;
pub mod separator;
pub mod solutions;
pub mod solver;
pub mod td;
pub mod tree;
pub mod verify;

pub use error::Error;
pub use forest::EliminationForest;
pub use gef::GeneralizedEliminationForest;
pub use graph::Graph;
pub use schemes::{Domain, SchemeParams, WeightFunction};
pub use solutions::{Configuration, Family, PartialSolution, Problem};
pub use td::TreeDecomposition;
pub use tree::{Segment, Tree};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
