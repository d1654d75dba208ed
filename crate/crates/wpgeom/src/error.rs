//! Error type for the Weil-Petersson geometry computations.

use coords::CoordError;
use develop::DevelopError;
use farey_core::FareyError;
use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error)]
pub enum WpError {
    /// A circle quadrilateral failed validation (vertices off the unit
    /// circle, repeated, or not in strict counterclockwise order).
    #[error("invalid circle quadrilateral: {reason}")]
    InvalidQuad { reason: &'static str },

    /// An edge on the extended real line has coincident endpoints.
    #[error("degenerate boundary edge ({a}, {b})")]
    DegenerateEdge { a: f64, b: f64 },

    /// A coefficient or endpoint that must be a finite real is not.
    #[error("non-finite value {value} in {place}")]
    NonFinite { value: f64, place: &'static str },

    /// An evaluation point lies on the wrong side of the real line.
    #[error("evaluation point with Im z = {im} is outside the {expected} half-plane")]
    WrongHalfPlane { im: f64, expected: &'static str },

    /// A developed tessellation is missing the image of a required vertex.
    #[error("no developed image for vertex {vertex}")]
    MissingVertexImage { vertex: String },

    /// An underlying coordinate-function error.
    #[error(transparent)]
    Coord(#[from] CoordError),

    /// An underlying developing-algorithm error.
    #[error(transparent)]
    Develop(#[from] DevelopError),

    /// An underlying tessellation error.
    #[error(transparent)]
    Farey(#[from] FareyError),
}
