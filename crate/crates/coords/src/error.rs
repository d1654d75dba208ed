//! Error type for coordinate-function operations and serialization.

use thiserror::Error;

/// Errors raised by coordinate operations and I/O.
#[derive(Debug, Error)]
pub enum CoordError {
    /// An operation received a coordinate function of the wrong kind.
    #[error("expected a {expected} coordinate function, got {got}")]
    KindMismatch { expected: &'static str, got: &'static str },

    /// A fan-sum based operation was asked to evaluate a coordinate
    /// function whose support is not finitely enumerable (no fan-tail
    /// model is available for lazily defined inputs).
    #[error("operation requires a finitely supported coordinate function")]
    NotInP,

    /// A lazily defined function with unbounded support cannot be
    /// materialised into a finite entry map.
    #[error("coordinate function has unbounded support; only truncations are available")]
    InfiniteSupport,

    /// An underlying tessellation error (bad vertex or edge).
    #[error(transparent)]
    Farey(#[from] farey_core::FareyError),

    /// Unknown `kind` field in a coordinate file.
    #[error("unknown coordinate kind {0:?} (expected \"shear\" or \"diamond\")")]
    UnknownKind(String),

    /// Unsupported `model` field in a coordinate file.
    #[error("unsupported model {0:?} (expected \"H\")")]
    UnsupportedModel(String),

    /// The same edge appeared twice in a coordinate file.
    #[error("duplicate edge ({0}, {1}) in coordinate file")]
    DuplicateEdge(String, String),

    /// A coordinate value was not a finite double.
    #[error("non-finite value {value} on edge ({0}, {1})", .edge.0, .edge.1)]
    NonFiniteValue { edge: (String, String), value: f64 },

    /// Malformed JSON (syntax, missing or unknown fields).
    #[error("malformed coordinate JSON: {0}")]
    Json(#[from] serde_json::Error),
}
