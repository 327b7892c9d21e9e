use std::fmt;

/// A failed command, classified by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed instance, bad parameters, or an instance the operation rejects.
    Input(String),
    /// A point budget, encoding width or arithmetic limit was hit.
    Budget(String),
    NotFound(String),
    /// A verification ran to completion and some check failed.
    Failed(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
            CliError::NotFound(_) => 3,
            CliError::Failed(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Budget(m) => write!(f, "budget exhausted: {m}"),
            CliError::NotFound(m) => write!(f, "{m}"),
            CliError::Failed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<latgap::Error> for CliError {
    fn from(e: latgap::Error) -> Self {
        use latgap::Error as E;
        let msg = match &e {
            E::InvalidInput(m) => m.clone(),
            other => other.to_string(),
        };
        match e {
            E::DegreeTooLarge { .. } | E::EncodingTooWide { .. } | E::TooLarge { .. } | E::Overflow(_) => {
                CliError::Budget(msg)
            }
            E::NotFoundWithinBounds(_) => CliError::NotFound(msg),
            E::InvalidInput(_) | E::NotPointed | E::PreconditionViolated(_) | E::NotAFibration(_) => {
                CliError::Input(msg)
            }
        }
    }
}
