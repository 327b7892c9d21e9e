use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("integer overflow in {0} (use arbitrary precision arithmetic)")]
    Overflow(&'static str),

    #[error("cone is not pointed")]
    NotPointed,

    #[error("point budget of {budget} exceeded while enumerating degree {degree}")]
    DegreeTooLarge { degree: u64, budget: u64 },

    #[error("graph with {n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("not found within bounds: {0}")]
    NotFoundWithinBounds(String),

    #[error("not a lattice segmental fibration: {0}")]
    NotAFibration(String),

    #[error("point encoding needs {bits} bits, more than the supported 128")]
    EncodingTooWide { bits: u32 },
}

impl Error {
    /// True for errors caused by a resource budget rather than bad input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::DegreeTooLarge { .. } | Error::EncodingTooWide { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
