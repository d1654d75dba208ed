//! Error type shared by the exact tessellation routines.

use thiserror::Error;

/// Errors raised by exact Farey-tessellation computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FareyError {
    /// A rational was constructed from the indeterminate pair 0/0.
    #[error("0/0 is not a point of the extended rationals")]
    IndeterminateRational,

    /// A string did not parse as `p/q` or as a plain integer.
    #[error("cannot parse {0:?} as an extended rational p/q")]
    ParseRational(String),

    /// Two vertices do not span an edge of the tessellation
    /// (the determinant `p_a q_b - p_b q_a` is not of absolute value 1).
    #[error("({0}, {1}) is not an edge: |p_a q_b - p_b q_a| != 1")]
    NotAnEdge(String, String),

    /// An edge was built from a vertex paired with itself.
    #[error("degenerate edge at vertex {0}")]
    DegenerateEdge(String),

    /// An integer matrix does not have determinant exactly 1.
    #[error("matrix determinant is {0}, expected 1")]
    NotUnimodular(String),

    /// A point claimed to lie on the unit circle is too far from it.
    #[error("|z| = {0} is not within tolerance of the unit circle")]
    NotOnCircle(f64),

    /// A cross-ratio was requested for a degenerate point configuration.
    #[error("cross-ratio of a degenerate point configuration")]
    DegenerateCrossRatio,

    /// A fan index was requested for an edge not incident to the fan's vertex.
    #[error("edge ({0}, {1}) is not incident to fan vertex {2}")]
    NotInFan(String, String, String),

    /// A fan index does not fit in a machine integer.
    #[error("fan index out of i64 range")]
    FanIndexOverflow,
}
