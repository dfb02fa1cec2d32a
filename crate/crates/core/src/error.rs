//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    // ---- graph parsing / construction ----
    #[error("malformed header line: {0:?}")]
    MalformedHeader(String),
    #[error("malformed line {line}: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("vertex index {0} out of range 1..={1}")]
    VertexOutOfRange(u32, u32),
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },

    // ---- decomposition validation ----
    #[error("parent structure contains a cycle through vertex {0}")]
    CyclicParent(u32),
    #[error("edge {0}-{1} has incomparable endpoints in the forest")]
    IncomparableEdge(u32, u32),
    #[error("forest is defined on {forest} vertices but the graph has {graph}")]
    ForestSizeMismatch { forest: usize, graph: usize },
    #[error("bag occurrences of vertex {0} are not connected in the decomposition tree")]
    DisconnectedOccurrence(u32),
    #[error("edge {0}-{1} is not covered by any bag")]
    UncoveredEdge(u32, u32),
    #[error("vertex {0} appears in no bag")]
    MissingVertex(u32),
    #[error("decomposition tree is not a tree")]
    NotATree,
    #[error("node set is not a segment: {0}")]
    NotASegment(String),
    #[error("segment has {0} edges; need at least 2 to split")]
    SegmentTooSmall(usize),
    #[error("separator oracle returned an invalid separator: {0}")]
    SeparatorIntegrity(String),
    #[error("instance has {n} vertices, above the bound {bound}")]
    SizeBoundExceeded { n: usize, bound: usize },

    // ---- number theory ----
    #[error("prime range bound must be at least 2, got {0}")]
    RangeTooSmall(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} is not a primitive {1}-root of unity modulo {2}")]
    InvalidRoot(u64, u64, u64),
    #[error("moduli are not pairwise coprime: gcd({0}, {1}) > 1")]
    NonCoprimeModuli(String, String),
    #[error("product of moduli does not exceed the bound {0}")]
    InsufficientModuli(String),

    // ---- schemes / weights ----
    #[error("scheme configuration error: {0}")]
    SchemeConfig(String),
    #[error("weight function does not cover id {0}")]
    WeightDomain(u32),

    // ---- solutions ----
    #[error("not a partial solution: {0}")]
    InvalidPartialSolution(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("sets must differ")]
    EqualSets,
    #[error("boundary size {0} is odd")]
    OddBoundary(usize),
    #[error("some configuration has several minimum-weight compliant solutions: {0}")]
    MinNotUnique(String),

    // ---- lower bounds ----
    #[error("no colliding pair exists in the searched range")]
    NoCollidingPair,
    #[error("instance not constructible: {0}")]
    NotConstructible(String),

    // ---- misc ----
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
