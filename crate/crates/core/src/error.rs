use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid state vector: {0}")]
    InvalidState(String),

    #[error("local dimension {0} is not supported here")]
    UnsupportedDimension(usize),

    #[error("seesaw did not converge within {iterations} iterations (best value so far {best})")]
    NonConvergence { iterations: usize, best: f64 },

    #[error("vertex set is affinely dependent (affine rank {rank}, need {needed})")]
    DegenerateVertices { rank: usize, needed: usize },

    #[error("predicate is not monotone over the sampled range: {0}")]
    NonMonotone(String),

    #[error("hyperplane has zero offset and cannot be normalized into a witness")]
    ZeroOffset,

    #[error("invalid hyperplane: {0}")]
    InvalidPlane(String),

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("alpha = {alpha} is outside the domain of family {family}")]
    AlphaOutOfRange { family: String, alpha: f64 },

    #[error("unknown witness family `{0}`")]
    UnknownFamily(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
