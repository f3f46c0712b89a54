use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("car {car} with preference {preference} found no free spot among 1..={n}")]
    ParkingFailure { car: usize, preference: u32, n: usize },

    #[error("n = {n} exceeds the enumeration limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("zero base raised to a negative power: {0}")]
    Pole(String),

    /// A computed quantity that must be an integer (or must be unique) was not.
    /// Always indicates a bug, never bad input.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
