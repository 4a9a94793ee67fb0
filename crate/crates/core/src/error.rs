use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument does not name valid objects of the input.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The input is well formed but outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("graph is disconnected: no path from {0} to {1}")]
    Disconnected(Vertex, Vertex),

    /// Exactness failure carrying the first offending pair.
    #[error("not exactly {k}-edge-connected: lambda({u}, {v}) = {lambda}")]
    NotExact {
        k: u32,
        u: Vertex,
        v: Vertex,
        lambda: u32,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A replayable artifact (script, rotation system) is inconsistent.
    #[error("format error: {0}")]
    Format(String),

    /// Enumeration stopped early; `completed` holds the counts of every fully processed order.
    #[error("resource budget exceeded after {} complete orders", completed.len())]
    Budget { completed: BTreeMap<usize, usize> },

    /// Something the theory guarantees did not happen. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
