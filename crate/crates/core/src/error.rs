use thiserror::Error;

use crate::lattice::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("adjacency parameter u = {u} out of range 1..={max}")]
    AdjacencyOutOfRange { u: usize, max: usize },

    #[error("invalid adjacency: {0}")]
    InvalidAdjacency(String),

    #[error("point {0} is not in the image")]
    PointNotInImage(Point),

    #[error("digital image must contain at least one point")]
    EmptyImage,

    #[error("point set must be nonempty")]
    EmptySet,

    #[error("operation needs a lattice-embedded image, got an abstract graph")]
    AbstractImage,

    #[error("no path between {0} and {1}")]
    NoPath(Point, Point),

    #[error("path enumeration exceeded the limit of {0} paths")]
    PathLimitExceeded(usize),

    #[error("image mismatch: {0}")]
    ImageMismatch(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("map is not a self-map")]
    NotSelfMap,

    #[error("map is not continuous")]
    Discontinuous,

    #[error("image is not connected")]
    Disconnected,

    #[error("search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("base property does not hold: {0}")]
    BaseFails(String),

    #[error("not a closed curve: {0}")]
    NotAClosedCurve(String),

    #[error("not a disk: {0}")]
    NotADisk(String),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("minimality certification needs {candidates} candidate points (limit {limit}); pass assume-minimal to proceed")]
    CertificationLimit { candidates: usize, limit: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
