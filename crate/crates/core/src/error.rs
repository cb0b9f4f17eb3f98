use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("order {n} exceeds the supported maximum of {max} for {what}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    NotNested(String),
    #[error("perron orbit spread {spread:e} exceeds {bound:e}")]
    OrbitSpread { spread: f64, bound: f64 },
    #[error("threshold mismatch: direct {direct} vs quotient {quotient}")]
    ThresholdMismatch { direct: f64, quotient: f64 },
    #[error("power iteration did not converge (residual {residual:e} after {iterations} iterations)")]
    Unconverged { residual: f64, iterations: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
