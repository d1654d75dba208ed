//! Reconstruction of circle homeomorphisms from edge coordinate functions
//! and extraction of coordinates from circle maps.
//!
//! The central objects are piecewise-Möbius homeomorphisms of the unit
//! circle: finitely many breakpoints in counterclockwise order, one disk
//! Möbius transformation per arc, continuous across breakpoints.  A
//! diamond coordinate function with finite support develops into such a
//! homeomorphism by composing one elementary four-arc map per supported
//! edge ([`develop_diamond`]); a shear function develops vertex images
//! directly through cross-ratio propagation ([`develop_vertices`]).  The
//! inverse direction reads shear and diamond values off any circle map
//! ([`extract_shear`], [`extract_diamond`]), and [`decoration`] attaches
//! the induced horocycle sizes at the vertices.
//!
//! All homeomorphisms are normalized to fix the boundary points `1`, `i`
//! and `-1` (the disk images of the vertices `infinity`, `-1` and `0`),
//! so coordinates determine the map without a Möbius ambiguity.

mod boundary;
mod develop;
mod error;
mod extract;
mod homeo;
mod mobius;

pub use boundary::{AngleDiffeo, CallableAngleMap, LogStretch};
pub use develop::{develop_diamond, develop_diamond_ordered, develop_vertices, VertexImageMap};
pub use error::DevelopError;
pub use extract::{decoration, extract_diamond, extract_shear, log_lambda, Decoration};
pub use homeo::{
    single_diamond_homeo, single_shear_homeo, CircleHomeo, CircleMap, PiecewiseMobiusHomeo, Side,
};
pub use mobius::MobiusDisk;

/// Maximum distance allowed between the two one-sided evaluations of a
/// piecewise map at a breakpoint, per unit of local expansion: the seam
/// budget at a breakpoint is this constant times the larger boundary
/// derivative of the two adjacent pieces.  Rounding noise in composed
/// maps grows with exactly that derivative, while structurally
/// mismatched pieces disagree by the length of an image arc — orders of
/// magnitude above the budget.
pub const CONTINUITY_TOL: f64 = 1e-9;

/// Maximum disagreement of one-sided logarithmic derivatives tolerated
/// before a vertex is reported as non-differentiable.
pub const DIFFERENTIABILITY_TOL: f64 = 1e-9;

/// Minimum angular separation of image points for cross-ratio extraction;
/// closer configurations are reported as degenerate.
pub const DEGENERATE_IMAGE_TOL: f64 = 1e-13;

/// Base step of the symmetric finite-difference derivative used for
/// callable (non-Möbius) circle maps, sharpened by one Richardson
/// extrapolation.
pub const FD_STEP: f64 = 1e-6;

/// Distance below which the image of a vertex is treated as the vertex
/// itself when sizing horocycles, so maps fixing a vertex reproduce its
/// Ford circle without rounding noise.
pub const FIXED_VERTEX_SNAP_TOL: f64 = 1e-13;
