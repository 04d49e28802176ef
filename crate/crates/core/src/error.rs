use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("squared distance must be non-negative, got {0}")]
    NegativeDistance(String),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("bit vector entry {0} is not 0 or 1")]
    NotABit(u8),

    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    AlphaOutOfRange(String),

    #[error("block plan does not partition B: {0}")]
    InconsistentPlan(String),

    #[error("oracle cap exceeded: {what} is {size}, cap {cap}")]
    OverCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid gadget config: {0}")]
    InvalidGadgetConfig(String),

    #[error("gadget config with delta {0} has not been validated; run validate_gadget_config first")]
    UnvalidatedGadget(String),

    #[error("metric mismatch: {0}")]
    MetricMismatch(&'static str),

    #[error("infeasible generator spec: {0}")]
    InfeasibleFamily(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
