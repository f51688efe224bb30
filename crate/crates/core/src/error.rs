use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector is outside the functional domain")]
    ZeroVector,

    #[error("vector length {got} does not match expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("constant vector: no admissible threshold split")]
    ConstantVector,

    #[error("vertex index {index} out of range for graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("edge weight must be positive, got {weight} on edge ({i}, {j})")]
    NonPositiveWeight { i: usize, j: usize, weight: f64 },

    #[error("vertex set must be a proper nonempty subset of the vertices")]
    DegenerateCut,

    #[error("partition has an empty cluster (label {0})")]
    EmptyCluster(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    NoEdges,

    #[error("need at least {need} points for k = {k} neighbors, got {got}")]
    TooFewPoints { need: usize, k: usize, got: usize },

    #[error("sign vector undefined: no zero entries and |positives| != |negatives|")]
    UnbalancedSigns,

    #[error("inner solver contract violated: inner objective {phi:e} > 0")]
    InnerContract { phi: f64 },

    #[error("degenerate inner step: S(g) = 0 for the solver output")]
    DegenerateStep,

    #[error("vector lies in the null space of the data matrix")]
    NullSpace,

    #[error("data matrix column {0} is zero after centering")]
    ZeroColumn(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("matrix is not positive definite (pivot {pivot:e} at column {col})")]
    NotPositiveDefinite { col: usize, pivot: f64 },

    #[error("eigensolver stalled: best residual {0:e}")]
    EigensolverStalled(f64),

    #[error("cluster count {k} out of range for {n} vertices")]
    BadClusterCount { k: usize, n: usize },

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
