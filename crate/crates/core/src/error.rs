use thiserror::Error;

use crate::multigraph::EdgeId;

/// Everything that can go wrong in the library.
///
/// Variants are grouped by the broad class the CLI cares about:
/// [`Error::is_limit`] separates resource caps from validation failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    Degree { vertex: usize, degree: usize },

    #[error("graph is disconnected ({reached} of {vertices} vertices reachable from vertex 0)")]
    Disconnected { reached: usize, vertices: usize },

    #[error("index {index} out of range (bound {bound})")]
    Index { index: usize, bound: usize },

    #[error("vertex count must be a positive even integer, got {0}")]
    Parity(usize),

    #[error("{what} = {value} exceeds the configured limit {limit}")]
    Limit {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("edge {0} is a loop and cannot carry a Whitehead move")]
    LoopMove(EdgeId),

    #[error("edges {0} and {1} share a vertex")]
    Overlap(EdgeId, EdgeId),

    #[error("girth lift did not terminate within {cap} gadget insertions")]
    NonTermination { cap: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("loop gadget removal rejected: {0}")]
    Gadget(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("root finding failed: {0}")]
    Convergence(String),

    #[error("graph has girth {girth}, at least 6 is required (run girth_lift first)")]
    Girth { girth: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by a configured size cap rather than bad input.
    pub fn is_limit(&self) -> bool {
        matches!(self, Error::Limit { .. } | Error::NonTermination { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
