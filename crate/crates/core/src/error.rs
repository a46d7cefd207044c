use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MortalityError {
    #[error("mortality table is empty")]
    Empty,
    #[error("header must be exactly `age,survivors`, found `{found}`")]
    Header { found: String },
    #[error("row {row}: malformed CSV: {message}")]
    Malformed { row: u64, message: String },
    #[error("row {row}: expected age {expected}, found `{found}`")]
    NonConsecutiveAge {
        row: u64,
        expected: u32,
        found: String,
    },
    #[error("row {row}: survivor count `{found}` is not a non-negative integer")]
    NonInteger { row: u64, found: String },
    #[error("radix (survivors at age 0) must be positive")]
    ZeroRadix,
    #[error("row {row}: survivors increased at age {age} ({previous} -> {current})")]
    Increasing {
        row: u64,
        age: u32,
        previous: u64,
        current: u64,
    },
    #[error("no living cohort at age {age}")]
    NoLivingCohort { age: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PricingError {
    #[error("cannot price an extinct cohort: no survivors at age {age}")]
    ExtinctCohort { age: u32 },
    #[error("no survivors to share the price")]
    NoSurvivors,
    #[error("annual payment must be positive")]
    NonPositivePayment,
    #[error("deferral must be at least 1 year, got {0}")]
    InvalidDeferral(u32),
    #[error("accumulation factor must exceed 1, got {0}")]
    InvalidBasis(String),
    #[error("price must be positive to compute a yield")]
    NonPositivePrice,
    #[error("survivors at the following age ({next}) exceed survivors at age ({current})")]
    NonMonotoneStep { current: u64, next: u64 },
    #[error("price must be non-negative")]
    NegativePrice,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Mortality(#[from] MortalityError),
    #[error(transparent)]
    Pricing(#[from] PricingError),
    #[error("invalid number `{0}`")]
    Number(String),
}
