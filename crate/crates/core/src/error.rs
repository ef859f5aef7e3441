use crate::model::Natural;

/// Errors produced while validating inputs or running a guarded computation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("length mismatch in `{field}`: expected {expected}, found {found}")]
    LengthMismatch {
        field: String,
        expected: usize,
        found: usize,
    },

    #[error("l > u: l = {l}, u = {u}")]
    InvertedRange { l: Natural, u: Natural },

    #[error("negative value in `{field}`: {value}")]
    NegativeValue { field: String, value: String },

    #[error("malformed decimal string in `{field}`: {value:?}")]
    MalformedDecimal { field: String, value: String },

    #[error("missing field `{0}`")]
    MissingField(&'static str),

    #[error("invalid field `{field}`: {reason}")]
    InvalidField { field: String, reason: String },

    #[error("invalid edge ({0}, {1}): {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("`{field}` exceeds the bound N = {bound}; the caller passed a stale bound")]
    BoundViolation { field: String, bound: Natural },

    #[error("{what} exceeds its guard: {actual} > {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u64,
        actual: u64,
    },

    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsilonOutOfRange(f64),

    #[error("lg N = {bits} exceeds 2^n for n = {n}; solve this instance by brute force instead")]
    WeightsTooLong { bits: u64, n: usize },

    #[error("no prime found in [{lower}, 2·{lower}] after {attempts} candidates")]
    PrimeSearchExhausted { lower: Natural, attempts: u64 },

    #[error("instance is not an exact Subset Sum instance (l = {l}, u = {u})")]
    NotExact { l: Natural, u: Natural },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors raised by a size or memory guard rather than by bad input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::GuardExceeded { .. } | Error::WeightsTooLong { .. } | Error::PrimeSearchExhausted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
