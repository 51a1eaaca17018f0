use thiserror::Error;

use crate::dm::ExchangeWitness;
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the family has no feasible sets")]
    EmptyFamily,
    #[error("symmetric exchange fails at {0}")]
    ExchangeViolation(ExchangeWitness),
    #[error("ground set of size {size} exceeds the supported maximum of {limit}")]
    CapacityExceeded { size: usize, limit: usize },
    #[error("{0} is not a feasible set")]
    NotFeasible(Subset),
    #[error("feasible sets do not all have the same size")]
    NotMatroid,
    #[error("the delta-matroid is not normal (the empty set is not feasible)")]
    NotNormal,
    #[error("element {element} is outside a ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("{subset} is not a subset of a ground set of size {n}")]
    SubsetOutOfRange { subset: Subset, n: usize },
    #[error("family bitset has bits beyond 2^{n}")]
    BitsOutOfRange { n: usize },
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("catalog line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
