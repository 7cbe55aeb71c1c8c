use thiserror::Error;

/// Crate-wide error type. The enumeration and verification layers report
/// failed *assertions* through ordinary return values; these variants are for
/// misuse of the API or genuine engine bugs.
#[derive(Debug, Error)]
pub enum CyError {
    #[error("invalid interval [{a},{b}] for n={n}")]
    InvalidInterval { a: usize, b: usize, n: usize },
    #[error("composition mismatch: {0}")]
    CompositionError(String),
    #[error("Serre duality check failed on the pair ({x}, {y})")]
    SerreCheckFailed { x: String, y: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("no bijection onto the polygon model is compatible with both crossings and rotation")]
    NoCompatibleBijection,
    #[error("arc set contains a crossing pair")]
    CrossingInput,
    #[error("subcategory is not rigid")]
    NotRigid,
    #[error("parts do not partition the given subcategory")]
    NotAPartition,
    #[error("object does not lie in the required perpendicular subcategory")]
    NotInPerp,
    #[error("not a subset")]
    NotSubset,
    #[error("mutation direction D is not contained in the core")]
    DNotInCore,
    #[error("subcategory is not cluster tilting")]
    NotClusterTilting,
    #[error("core is not contained in the cluster tilting object")]
    CoreNotContained,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal engine error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CyError>;
