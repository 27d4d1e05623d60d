use thiserror::Error;

/// Resource guards that abort a computation instead of letting it run away.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("S-pair budget of {budget} exhausted")]
    SPairBudget { budget: usize },
    #[error("minor size {requested} exceeds the cap of {cap}")]
    MinorSize { requested: usize, cap: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("differential composite is nonzero at degree {degree}, entry ({row}, {col})")]
    NonzeroComposite { degree: i32, row: usize, col: usize },
    #[error("invalid linear component: {0}")]
    InvalidComponent(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("declared loci disagree with the complex in degree {degree} at {point}: declared {declared}, computed {computed}")]
    Inconsistent {
        degree: i32,
        point: String,
        declared: bool,
        computed: bool,
    },
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
