use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0} vertices requested, at most 128 are supported")]
    Capacity(usize),

    #[error("edge {edge} has {size} vertices, which does not exceed the threshold s = {s}")]
    ThresholdTooLarge { edge: usize, size: usize, s: usize },

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    /// The search hit its node budget. `lower..=upper` still brackets the optimum.
    #[error("node budget of {budget} exhausted after {nodes} nodes; optimum lies in [{lower}, {upper}]")]
    BudgetExhausted {
        budget: u64,
        nodes: u64,
        lower: usize,
        upper: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
