use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode exposed by the library.
///
/// Variants map onto process exit codes in the CLI: validation problems
/// (`InvalidInput`, `Parse`) exit 2, capacity and regime refusals
/// (`BudgetExceeded`, `TrivialRegime`) exit 3, everything else exits 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested computation would exceed the work budget.
    ///
    /// `required` is the estimated elementary-step count, `budget` the cap it
    /// was checked against. The hint names the knob to turn.
    #[error("work budget exceeded: the computation needs about {required} steps, the budget is {budget}{hint}")]
    BudgetExceeded {
        required: u128,
        budget: u64,
        hint: &'static str,
    },

    /// The sample size is too small for the bound's constant chain to apply.
    ///
    /// `threshold` is the smallest admissible N for the given parameters.
    #[error("sample size {n} is below the admissible threshold {threshold}; the bound's constant chain needs N >= 32(s + L)")]
    TrivialRegime { n: u64, threshold: f64 },

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A text input (point-set or bracket file) failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A Monte Carlo trial failed; wraps the underlying error with its index.
    #[error("trial {index} failed: {source}")]
    Trial {
        index: u64,
        #[source]
        source: Box<Error>,
    },

    /// Unexpected failure: a dependency refused inputs this crate validated.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::InvalidInput(_) | Error::Parse { .. } => 2,
            Error::BudgetExceeded { .. } | Error::TrivialRegime { .. } => 3,
            _ => 1,
        }
    }

    /// Unwraps `Trial` wrappers down to the causing error.
    pub fn root(&self) -> &Error {
        match self {
            Error::Trial { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Convenience constructor for `InvalidInput`.
pub fn invalid(msg: impl fmt::Display) -> Error {
    Error::InvalidInput(msg.to_string())
}
