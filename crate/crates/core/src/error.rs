use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("edge `{0}` refers to an unknown vertex")]
    UnknownVertex(String),

    #[error("dart {0} does not exist")]
    UnknownDart(u32),

    #[error("path is not wellformed: dart {index} does not start where its predecessor ends")]
    MalformedPath { index: usize },

    #[error("image of edge `{edge}` is empty")]
    EmptyImage { edge: String },

    #[error("image of edge `{edge}` is incoherent with its endpoints: {reason}")]
    Incoherent { edge: String, reason: String },

    #[error("turn is not at a vertex of the graph")]
    TurnVertex,

    #[error("map is not expanding: edge `{edge}` never grows")]
    NotExpanding { edge: String },

    #[error("map is not a train track map: image of `{edge}` crosses illegal turn {turn}")]
    NotTrainTrack { edge: String, turn: String },

    #[error("transition matrix is not primitive")]
    NotPrimitive,

    #[error("power iteration did not reach residual {tol:e} within {iterations} iterations")]
    NoConvergence { tol: f64, iterations: usize },

    #[error("dart `{0}` is not periodic under the derivative map")]
    NotPeriodicDart(String),

    #[error("point on edge `{edge}` at {position} is not periodic")]
    NonPeriodicPoint { edge: String, position: f64 },

    #[error("subdivision is not invariant: {0}")]
    Subdivision(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("stability not established: {0}")]
    Unstable(String),

    #[error("language did not stabilize within {0} iterations")]
    MaxIterExceeded(usize),

    #[error("graphs are incompatible: {0}")]
    IncompatibleGraphs(String),

    #[error("word of length {len} is too short to chop {chop} darts from each end")]
    WordTooShort { len: usize, chop: usize },
}
