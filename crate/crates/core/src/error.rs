use thiserror::Error;

/// Errors raised while building spaces, schedules, group balls or graphs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph is disconnected: vertex {unreachable} is not reachable from vertex 0")]
    DisconnectedGraph { unreachable: usize },

    #[error("vertex id {id} out of range for a graph with {vertex_count} vertices")]
    InvalidVertexId { id: usize, vertex_count: usize },

    #[error("distance matrix violates {axiom} at {witness:?}")]
    MetricViolation {
        axiom: MetricAxiom,
        witness: Vec<usize>,
    },

    #[error("distance matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("blocks were built over different exponent schedules")]
    ScheduleMismatch,

    #[error("ball enumeration exceeded the cap of {cap} elements")]
    BallTooLarge { cap: usize },

    #[error("no simple {degree}-regular graph on {vertex_count} vertices")]
    InfeasibleDegree { vertex_count: usize, degree: usize },

    #[error("pairing model produced no simple graph after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("power iteration did not reach tolerance after {iterations} iterations")]
    NotConverged { iterations: usize },

    #[error("embedding collapses every edge; the edge mean is zero")]
    DegenerateEmbedding,

    #[error("schedule has {available} exponents but depth {requested} was requested")]
    ScheduleTooShort { available: usize, requested: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DisconnectedGraph { .. } => "DisconnectedGraph",
            Error::InvalidVertexId { .. } => "InvalidVertexId",
            Error::MetricViolation { .. } => "MetricViolation",
            Error::NotSquare { .. } => "NotSquare",
            Error::ScheduleMismatch => "ScheduleMismatch",
            Error::BallTooLarge { .. } => "BallTooLarge",
            Error::InfeasibleDegree { .. } => "InfeasibleDegree",
            Error::SamplingExhausted { .. } => "SamplingExhausted",
            Error::NotConverged { .. } => "NotConverged",
            Error::DegenerateEmbedding => "DegenerateEmbedding",
            Error::ScheduleTooShort { .. } => "ScheduleTooShort",
            Error::Parse { .. } => "Parse",
        }
    }
}

/// The metric axiom a distance matrix failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricAxiom {
    /// Entry is negative, NaN or infinite.
    NonNegativeFinite,
    /// Diagonal entry is not zero.
    ZeroDiagonal,
    Symmetry,
    /// Two distinct points at distance zero.
    Separation,
    Triangle,
}

impl std::fmt::Display for MetricAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MetricAxiom::NonNegativeFinite => "non-negativity",
            MetricAxiom::ZeroDiagonal => "zero diagonal",
            MetricAxiom::Symmetry => "symmetry",
            MetricAxiom::Separation => "separation",
            MetricAxiom::Triangle => "triangle inequality",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
