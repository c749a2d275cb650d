use thiserror::Error;

use crate::verify::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge endpoint {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("n must be prime (got {0})")]
    NotPrime(usize),

    #[error("n must be at least 3 (got {0})")]
    OrderTooSmall(usize),

    #[error("{name} must be at least {min} (got {value})")]
    ParameterTooSmall {
        name: &'static str,
        min: usize,
        value: usize,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("graph has {vertices} vertices, above the oracle size guard of {guard}")]
    TooLarge { vertices: usize, guard: usize },

    #[error("verification of {} failed", .0.claim)]
    Verification(Box<VerificationReport>),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
