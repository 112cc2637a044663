use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid value or dimension for a domain operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bad configuration (budgets, counts, labels, grids).
    #[error("configuration error: {0}")]
    Config(String),

    /// Inconsistent swarm or protocol state.
    #[error("state error: {0}")]
    State(String),

    /// Wire-format parse failure; no partial message is produced.
    #[error("parse error: {0}")]
    Parse(String),

    /// The ledger would exceed the total privacy budget.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    /// Dataset load failure, naming the offending row/column where known.
    #[error("load error: {0}")]
    Load(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
