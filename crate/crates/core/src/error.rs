use thiserror::Error;

/// Errors produced while building, transforming, evaluating or optimizing placements.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid netlist: {0}")]
    Netlist(String),

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid placement: {0}")]
    Placement(String),

    #[error("transformation rejected: {0}")]
    Transform(String),

    #[error("cannot build a common-centroid placement: {0}")]
    Infeasible(String),

    #[error("objective evaluation failed: {0}")]
    Objective(String),

    #[error("invalid annealing configuration: {0}")]
    Config(String),

    #[error("empty archive")]
    EmptyArchive,

    #[error("oracle budget exceeded: {0}")]
    OverBudget(String),

    #[error("unknown benchmark '{0}'")]
    UnknownBenchmark(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
