use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate is NaN or infinite")]
    NonFinite,
    #[error("a configuration needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("configurations have different sizes (k = {0} vs k = {1})")]
    MismatchedK(usize, usize),
    #[error("first two points are linearly dependent (|wedge| = {0:e})")]
    DegenerateInput(f64),
    #[error("lemma preconditions do not hold: {0}")]
    PreconditionViolated(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("only {found} non-adjacent populated sectors, {needed} requested")]
    InsufficientSpread { needed: usize, found: usize },
    #[error("enumeration of {tuples} tuples exceeds the budget of {cap}")]
    BudgetExceeded { tuples: u128, cap: u128 },
    #[error("need at least {needed} positive data points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("{degenerate} of {samples} sampled tuples were degenerate")]
    DegenerateExcess { degenerate: u64, samples: u64 },
    #[error("scale j = {j} needs 2^(j+2) <= N/2 for N = {n}")]
    ScaleOutOfRange { j: u32, n: usize },
    #[error("malformed data: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
