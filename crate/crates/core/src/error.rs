use thiserror::Error;

/// Every failure the toolkit can report. Variants carry the offending
/// vertex ids (as they appear in the input) so messages can be traced back
/// to the graph file.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {{`{0}`, `{1}`}}")]
    DuplicateEdge(String, String),
    #[error("non-positive or non-finite value {value} for {what}")]
    NonPositiveValue { what: String, value: f64 },
    #[error("graph is disconnected: vertex `{0}` is unreachable from the first vertex")]
    Disconnected(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("boundary vertices `{0}` and `{1}` are adjacent")]
    BoundaryNotIndependent(String, String),
    #[error("boundary vertex `{0}` has no interior neighbour")]
    BoundaryVertexIsolatedFromInterior(String),
    #[error("boundary is empty")]
    EmptyBoundary,
    #[error("interior is empty")]
    EmptyInterior,
    #[error("vertex `{0}` is not an interior vertex")]
    NotInteriorVertex(String),
    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidFamilyParams { family: String, reason: String },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("function has {found} values but its domain has {expected} vertices")]
    DomainMismatch { expected: usize, found: usize },
    #[error("invalid dimension parameter {0}: n must lie in (1, inf]")]
    InvalidDimensionParam(f64),
    #[error("vertex `{0}` has no neighbours; curvature is undefined")]
    IsolatedVertex(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("interior system is singular: component {component:?} does not touch the boundary")]
    SingularInteriorSystem { component: Vec<String> },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("wrong weight class: {0}")]
    WrongWeightClass(String),
    #[error("hypothesis not satisfied: {0}")]
    WrongHypothesis(String),
    #[error("interior graph is not complete: `{0}` and `{1}` are not adjacent")]
    InteriorNotComplete(String, String),
    #[error("interior graph has no positive curvature at dimension {dimension} (best K = {kappa})")]
    InteriorCurvatureNotPositive { dimension: f64, kappa: f64 },
    #[error("no feasible interior scaling found up to lambda = {lambda_max}")]
    FeasibilitySearchFailed { lambda_max: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
