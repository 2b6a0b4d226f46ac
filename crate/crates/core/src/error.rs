use thiserror::Error;

use crate::complex::Label;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty facet list")]
    EmptyInput,
    #[error("facet {facet} repeats vertex {vertex}")]
    DuplicateVertexInFacet { facet: usize, vertex: Label },
    #[error("dimension {dim} out of range [-1, {max}]")]
    DimensionOutOfRange { dim: isize, max: isize },
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(String),
    #[error("vertex label {0} appears in both complexes")]
    VertexLabelCollision(Label),
    #[error("{0} is not a facet")]
    NotAFacet(String),
    #[error("bijection does not match the facet vertices: {0}")]
    BijectionArityMismatch(String),
    #[error("handle addition not admissible: {0}")]
    AdmissibilityViolation(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not connected")]
    NotConnected,
    #[error(
        "complex is not balanced: facet {facet} has color counts {counts:?}, expected {expected:?}"
    )]
    NotBalanced {
        facet: String,
        counts: Vec<usize>,
        expected: Vec<usize>,
    },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("type vector {0:?} does not match dimension {1}")]
    TypeVectorMismatch(Vec<usize>, usize),
    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),
    #[error("complex of dimension {0} is not even dimensional")]
    DimensionParity(isize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("poset is not semi-Eulerian")]
    NotSemiEulerian,
    #[error("ab-polynomial is not in the span of cd-monomials (residual has {} nonzero words)", .0.len())]
    NotInCdSpan(Vec<(String, String)>),
    #[error("illegal bistellar move: {0}")]
    IllegalMove(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("target out of range: {0}")]
    TargetOutOfRange(String),
    #[error("fill schedule blocked: {0}")]
    ScheduleBlocked(String),
    #[error("facet list is not a simple tree: failure at position {index}: {reason}")]
    NotSimpleTree { index: usize, reason: String },
    #[error("subcomplex is not a homology ball")]
    NotABall,
    #[error("vertex {0} already exists")]
    VertexCollision(Label),
    #[error("link of {0} is not a 2-sphere")]
    NotASphereLink(String),
    #[error("no spanning simple tree found: {0}")]
    NotFound(String),
    #[error("target infeasible: {0}")]
    TargetInfeasible(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("unknown space {0}")]
    UnknownSpace(String),
    #[error("unknown catalog entry {0}")]
    UnknownEntry(String),
    #[error("catalog entry {name} failed self-check: {detail}")]
    CatalogMismatch { name: String, detail: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("replay failed at step {step}: {message}")]
    Replay { step: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
