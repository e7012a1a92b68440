use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("not 1-planar: {0}")]
    NotOnePlanar(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("drawing is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("graph is not normalized: {0}")]
    NotNormalized(String),
    #[error("invalid Hamiltonian certificate: {0}")]
    InvalidCertificate(String),
    #[error("lower bound needs n >= 4, got {0}")]
    DegenerateN(usize),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("spine does not match the graph: {0}")]
    SpineMismatch(String),
    #[error("instance too large for exact search: {0}")]
    TooLarge(String),
    #[error("no blocks dominated by outer vertex {0}")]
    NoBlocksDominated(usize),
    #[error("partition inducer is covered")]
    InducerCovered,
    #[error("parse error at {locus}: {msg}")]
    Parse { locus: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
