use thiserror::Error;

/// Failures shared by every module. Verdicts (a law that fails, a sequence
/// that is not Cauchy) are reported through return values, not through this
/// type; `Error` is reserved for malformed input and exhausted budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} does not belong to the carrier")]
    NotInCarrier(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a complete lattice: {0}")]
    NotALattice(String),

    #[error("operation needs a finite carrier")]
    InfiniteCarrier,

    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: String,
        budget: u64,
    },

    #[error("not Cauchy: the Cauchy expression evaluates to {value}")]
    NotCauchy { value: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(what: impl Into<String>, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            needed: needed.to_string(),
            budget,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

/// A law that fails, with the arguments at which it fails.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new(law: impl Into<String>, witness: Vec<String>) -> Self {
        Violation { law: law.into(), witness }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.witness.is_empty() {
            write!(f, "{} fails", self.law)
        } else {
            write!(f, "{} fails at ({})", self.law, self.witness.join(", "))
        }
    }
}
