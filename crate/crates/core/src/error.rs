use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("point not in open cone relative to L (L(x) = {value})")]
    NotInOpenCone { value: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("weights must sum to 1 (sum = {sum})")]
    NotProbability { sum: f64 },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("index {index} out of bounds (len {len})")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("action leaves positive cone: {0}")]
    ActionLeavesCone(String),

    #[error("pair fails condition (1) at {sample}: violation {violation}")]
    ConditionViolated { sample: String, violation: f64 },

    #[error("pairs do not share rho: ratio varies by {spread}")]
    PairsDoNotShareRho { spread: f64 },

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("nonpositive density {value} at {at}")]
    NonPositiveDensity { at: String, value: f64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph disconnected from base; unreachable: {0:?}")]
    Disconnected(Vec<String>),

    #[error("partial product not converged at N = {n}: |{partial} - {target}| > tol")]
    NotConverged { n: usize, partial: f64, target: f64 },

    #[error("not hyperbolic: |trace| = {trace} <= 2")]
    NotHyperbolic { trace: f64 },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
