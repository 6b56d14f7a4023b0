use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has wrong size: expected {expected}, got {got}")]
    WrongSize { expected: String, got: String },

    #[error("vector is tagged {got} but the chain expects {expected}")]
    ChainMismatch { expected: String, got: String },

    #[error("two-step deformation is not available on the {0} chain")]
    TwoStepUnsupported(String),

    #[error("deformation parameter {0} is outside (0, 1)")]
    InvalidLambda(f64),

    #[error("degenerate pair: vectors are linearly dependent")]
    Degenerate,

    #[error("point is not in the group: residual {0:e}")]
    NotInGroup(f64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("action is not free for p = {p:?}, q = {q:?}")]
    NotFree { p: Vec<i64>, q: Vec<i64> },

    #[error("hypothesis fails for p = {p:?}, q = {q:?}: no pair p_i != p_j with p_i + p_j outside {{2q1, 2q2, q1 + q2}}")]
    HypothesisFails { p: Vec<i64>, q: Vec<i64> },

    #[error("angle {0} is a multiple of pi/2; the point is excluded")]
    DegenerateAngle(String),

    #[error("exact arithmetic does not cover the angle {0}")]
    UnsupportedAngle(String),

    #[error("could not parse angle {0:?}")]
    BadAngle(String),

    #[error("search budget must be at least one restart")]
    EmptyBudget,

    #[error("horizontal space has dimension {0}; need at least 2")]
    HorizontalTooSmall(usize),

    #[error("exact replay failed in branch {branch}: {detail}")]
    ReplayFailed { branch: String, detail: String },

    #[error("symmetric function index {k} outside 1..={len}")]
    SymmetricIndex { k: usize, len: usize },

    #[error("integral Pontrjagin constraint has {0} admissible magnitudes; expected exactly one")]
    NonUniqueMagnitude(usize),

    #[error("polynomial is in the wrong variables: expected {expected}, got {got}")]
    WrongVariables { expected: String, got: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
