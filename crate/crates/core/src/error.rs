use thiserror::Error;

use crate::measures::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("q must exceed 1, got {0}")]
    BaseTooSmall(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("family {family} requires {expected} q, got q = {q}")]
    ParityMismatch {
        family: Family,
        q: u64,
        expected: &'static str,
    },
    #[error("partition {partition} is outside the support of {family}")]
    OutsideSupport { family: Family, partition: String },
    #[error("deformation parameter u = {0} must lie in [0, 1]")]
    DeformationOutOfRange(String),
    #[error("tail bound invalid: {0}")]
    TailBoundInvalid(String),
    #[error("series degree bounds differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("cannot invert a series with zero constant term")]
    NotInvertible,
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },
    #[error("interval {0} contains zero and cannot be inverted")]
    IntervalContainsZero(String),
    #[error("invalid partition text {0:?}")]
    PartitionSyntax(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search space of {candidates} candidates exceeds budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("sampler needs partitions beyond size cap {0}")]
    SizeCapExceeded(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
