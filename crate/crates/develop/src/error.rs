//! Error type for developing and extraction.

use thiserror::Error;

/// Errors raised while developing homeomorphisms or extracting
/// coordinates from circle maps.
#[derive(Debug, Error)]
pub enum DevelopError {
    /// A quadrilateral handed to an elementary map is not strictly
    /// counterclockwise (coincident or misordered points).
    #[error("quadrilateral is not strictly counterclockwise: {0}")]
    DegenerateQuad(String),

    /// Vertex-image propagation produced a point outside its required
    /// arc: the data does not develop into a monotone circle map at the
    /// working precision.
    #[error("vertex images lose cyclic order at {vertex}")]
    MonotonicityViolation { vertex: String },

    /// Image points of a quadrilateral are too close together for a
    /// meaningful cross-ratio.
    #[error("image quadrilateral is degenerate (separation below tolerance)")]
    DegenerateImage,

    /// One-sided derivatives disagree at a vertex where a two-sided
    /// derivative is required.
    #[error("map is not differentiable at {vertex}: h'({vertex}+) = {plus}, h'({vertex}-) = {minus}")]
    NotDifferentiable { vertex: String, plus: f64, minus: f64 },

    /// A matrix does not describe an orientation-preserving Möbius
    /// transformation of the disk.
    #[error("matrix is not an orientation-preserving disk Möbius transformation")]
    InvalidMobius,

    /// Adjacent pieces of a piecewise map disagree at a breakpoint.
    #[error("pieces disagree at breakpoint angle {angle}: gap {gap}")]
    BrokenContinuity { angle: f64, gap: f64 },

    /// A piecewise map was built with no pieces.
    #[error("piecewise map needs at least one piece")]
    NoPieces,

    /// Two breakpoints of a piecewise map coincide.
    #[error("duplicate breakpoint at angle {0}")]
    DuplicateBreakpoint(f64),

    /// An angle perturbation amplitude outside (-1, 1), which would break
    /// monotonicity of the angle map.
    #[error("amplitude {0} is not in (-1, 1)")]
    InvalidAmplitude(f64),

    /// An underlying coordinate-function error.
    #[error(transparent)]
    Coord(#[from] coords::CoordError),

    /// An underlying tessellation error.
    #[error(transparent)]
    Farey(#[from] farey_core::FareyError),
}
