use thiserror::Error;

/// Every failure mode of the toolkit. Domain outcomes that are answers rather
/// than failures (an infeasible system, an unpinned point) are returned as
/// ordinary values instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("wrong number of points: expected {expected}, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("support points are affinely dependent")]
    DegenerateSupport,
    #[error("witness lies on the hyperplane")]
    WitnessOnHyperplane,
    #[error("no generic perturbation found after {rounds} rounds")]
    RetryExhausted { rounds: usize },
    #[error("degenerate vertex configuration: {0}")]
    DegenerateVertices(String),
    #[error("family is not separated")]
    NotSeparated,
    #[error("no hyperplane transversal exists (family is separated)")]
    NoTransversal,
    #[error("point does not pin the family")]
    NotPinned,
    #[error("family is not loose")]
    NotLoose,
    #[error("invalid part count r={r} for n={n}")]
    InvalidR { r: usize, n: usize },
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("malformed edge {0:?}")]
    MalformedEdge(Vec<usize>),
    #[error("color class {0} is empty")]
    EmptyColorClass(usize),
    #[error("insufficient points: need {needed}, have {have}")]
    InsufficientPoints { needed: usize, have: usize },
    #[error("no homogeneous clique of size {k} among {parts} parts")]
    CliqueNotFound { k: usize, parts: usize },
    #[error("dimension {0} is not supported by the exact depth oracles")]
    UnsupportedDimension(usize),
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("edge density {found} is below the required {required}")]
    DensityTooLow { required: String, found: String },
    #[error("too few points: need at least {needed}, have {have}")]
    TooFewPoints { needed: usize, have: usize },
    #[error("invalid k={k} for n={n}")]
    InvalidK { k: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
