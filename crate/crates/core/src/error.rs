use thiserror::Error;

/// Errors raised by the driftwalk library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("site count must be at least 1")]
    EmptyInterval,

    #[error("omega has {got} entries, expected {expected} for n = {n}")]
    OmegaLength { n: usize, expected: usize, got: usize },

    #[error("omega({site}) = {value} is not in (0, 1]")]
    InvalidProbability { site: usize, value: f64 },

    #[error("drift probabilities must satisfy 1/2 < q < p <= 1 (got q = {q}, p = {p})")]
    DriftOrdering { q: f64, p: f64 },

    #[error("drift position {position} is outside [{low}, {high}]")]
    PositionOutOfRange { position: usize, low: usize, high: usize },

    #[error("drift position {position} appears more than once")]
    DuplicatePosition { position: usize },

    #[error("{what} = {value} is out of range: {expected}")]
    Domain {
        what: &'static str,
        value: String,
        expected: &'static str,
    },

    #[error("enumeration needs {required} placements but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("n = {n} exceeds the supported scale of {max} sites")]
    SizeExceeded { n: usize, max: usize },

    #[error("printed limit expression is singular (denominator {denominator:e})")]
    Singularity { denominator: f64 },

    #[error("simulation report has {truncated} truncated walks; parity needs a complete sample")]
    TruncatedSample { truncated: u64 },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: impl ToString, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value: value.to_string(),
            expected,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
