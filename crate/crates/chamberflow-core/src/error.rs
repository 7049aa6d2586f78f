//! Error type shared across the crate.
//!
//! Variants are grouped by the pipeline stage that produces them so that the
//! CLI can map them onto its exit-code contract (usage/name errors vs.
//! numerical failures vs. verification mismatches).

use thiserror::Error;

/// Crate-wide error enum.
#[derive(Debug, Error)]
pub enum Error {
    /// Catalog file could not be read or parsed.
    #[error("catalog: {0}")]
    Catalog(String),

    /// No catalog row with the requested name.
    #[error("unknown action {0:?}")]
    UnknownAction(String),

    /// Parameter instantiation failed (missing/extra parameter, out-of-range
    /// value, or a multiplicity that evaluates negative).
    #[error("cannot instantiate {name}: {reason}")]
    Instantiation {
        /// Catalog row name.
        name: String,
        /// Human-readable diagnostic, including the offending values.
        reason: String,
    },

    /// A multiplicity expression in the catalog could not be parsed.
    #[error("bad multiplicity expression {expr:?}: {reason}")]
    Expr {
        /// Offending expression text.
        expr: String,
        /// Parse diagnostic.
        reason: String,
    },

    /// Chamber construction failed (no feasible orientation, empty interior).
    #[error("chamber: {0}")]
    Chamber(String),

    /// A point lies outside the domain required by an operation
    /// (outside the open chamber, or within the pole guard of a wall).
    #[error("point out of domain: {0}")]
    OutOfDomain(String),

    /// A dimension mismatch between a point/direction and the action's rank.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension {
        /// Expected length (the action's rank).
        expected: usize,
        /// Length actually supplied.
        got: usize,
    },

    /// An iterative numerical routine failed to converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Invalid argument to an operation (bad tolerances, empty input, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Underlying I/O error.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization error.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
