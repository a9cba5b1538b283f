use thiserror::Error;

use crate::params::SparsityCertificate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{format} parse error at byte {offset}: {message}")]
    Parse {
        format: &'static str,
        offset: usize,
        message: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("m must be greater than 1, got {0}")]
    DensityTooSmall(String),

    #[error("pathological sparsity parameters a = {a}, b = {b} (2a + b < 1)")]
    Pathological { a: String, b: String },

    #[error("parameters a = {a}, b = {b} are outside the count-matroid regime (integral a >= 1, b >= -2a)")]
    MatroidRegime { a: i64, b: i64 },

    #[error("graph is not ({}, {})-sparse", crate::rational::format_rational(&.0.a), crate::rational::format_rational(&.0.b))]
    NotSparse(Box<SparsityCertificate>),

    #[error("edge id {id} does not belong to the host graph ({edges} edges)")]
    ForeignEdge { id: usize, edges: usize },

    #[error("vertex {vertex} does not belong to the host graph ({vertices} vertices)")]
    ForeignVertex { vertex: usize, vertices: usize },

    #[error("oracle host does not match the input graph")]
    HostMismatch,

    #[error("input too large for exhaustive search: {what} = {actual}, limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// A step that cannot fail on valid input did fail. This is
    /// never expected and always surfaced to the caller.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn parse(format: &'static str, offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            format,
            offset,
            message: message.into(),
        }
    }
}
