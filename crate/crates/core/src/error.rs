use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex pair ({0}, {1})")]
    InvalidVertex(usize, usize),
    #[error("generator spec infeasible: {0}")]
    Infeasible(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parameter violation: {0}")]
    ParameterViolation(String),
    #[error("invalid walk specification: {0}")]
    InvalidWalk(String),
    #[error("sparsity exponent {0} outside [0, 2]")]
    EllOutOfRange(f64),
    #[error("primitive precondition violated: {0}")]
    Precondition(String),
    #[error("linear program is infeasible")]
    LpInfeasible,
    #[error("linear program is unbounded")]
    LpUnbounded,
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
