use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("series did not converge within {terms} terms (last term magnitude {last_term:e})")]
    Truncation { terms: usize, last_term: f64 },

    #[error("grid too short: {needed} steps required, {available} available")]
    InsufficientGrid { needed: usize, available: usize },

    #[error("insufficient history: {needed} values required, {available} supplied")]
    Startup { needed: usize, available: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("solution diverged at step {step} (|y| = {value:e})")]
    Divergence { step: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
