use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported signature ({genus},{punctures}): {reason}")]
    InvalidSignature {
        genus: u32,
        punctures: u32,
        reason: &'static str,
    },
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("invalid normal coordinates: {0}")]
    InvalidCoordinates(String),
    #[error("diagram inconsistency: {0}")]
    Diagram(String),
    #[error("canonical lift failed: {0}")]
    Geometry(String),
    #[error("{0} is not a member of the pants decomposition")]
    NotInDecomposition(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("orbit escapes slice: vertex {vertex} maps to a class with max weight {needed}")]
    OrbitEscape { vertex: usize, needed: u32 },
    #[error("no candidate for separating class {0}: {1}")]
    NoCandidate(usize, String),
    #[error("ambiguous candidates for separating class {0}: {1:?}")]
    AmbiguousCandidate(usize, Vec<usize>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
