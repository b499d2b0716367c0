use thiserror::Error;

use crate::protocol::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A triplet or query breaks disjointness or non-emptiness.
    #[error("invalid triplet: {0}")]
    InvalidTriplet(&'static str),

    #[error("invalid variable name {name:?}: {reason}")]
    InvalidName { name: String, reason: &'static str },

    #[error("duplicate variable {0}")]
    DuplicateVariable(String),

    #[error("unknown variable {0}")]
    UnknownVariable(String),

    #[error("variable index {0} is outside the universe")]
    UnknownIndex(usize),

    #[error("universe of {0} variables exceeds the maximum of 64")]
    UniverseTooLarge(usize),

    #[error("graph contains a cycle through {}", .0.join(" -> "))]
    Cycle(Vec<String>),

    #[error("invalid edge {0}: {1}")]
    InvalidEdge(String, &'static str),

    /// Exhaustive computation refused because the universe is too large.
    #[error("{what} is limited to {limit} variables, got {size}")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("line {line}: `{directive}`: {message}")]
    Parse {
        line: usize,
        directive: String,
        message: String,
    },

    #[error("{axiom} takes {expected} premise(s)")]
    Arity {
        axiom: &'static str,
        expected: usize,
    },

    #[error("models are over different universes")]
    UniverseMismatch,

    #[error("invalid protocol: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidProtocol(Vec<Violation>),

    #[error("ill-posed query: {0}")]
    Query(String),

    #[error("{0}")]
    NotAffirmed(String),

    #[error("witness protocol does not separate {0}")]
    WitnessFailed(String),
}
