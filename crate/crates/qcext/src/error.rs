//! Error type for the quasiconformal-extension operations.

use coords::CoordError;
use develop::DevelopError;
use farey_core::FareyError;
use thiserror::Error;

/// Errors produced while building strip geometry, cell atlases, or the
/// assembled extension map.
#[derive(Debug, Error)]
pub enum QcError {
    /// A strip was requested with a non-positive or non-finite gap.
    #[error("strip gaps must be positive and finite, got rho = {rho}, lambda = {lambda}")]
    InvalidGap { rho: f64, lambda: f64 },

    /// The shear data does not balance around the given vertex, so its fan
    /// has no well-defined normalized gap sequence.
    #[error("shear data is not balanced at vertex {vertex} (residue {residue:e})")]
    NotBalanced { vertex: String, residue: f64 },

    /// The extension is only defined on the open unit disk.
    #[error("point lies outside the open unit disk (|z| = {modulus})")]
    OutsideDisk { modulus: f64 },

    /// Cell location descended further than [`crate::LOCATE_MAX_STEPS`]
    /// levels without settling; the point is too close to the boundary
    /// circle to resolve in f64.
    #[error("cell location exceeded the descent depth limit")]
    CellSearchOverflow,

    /// Three anchor points for a normalizing Möbius map were not distinct
    /// enough to determine it.
    #[error("anchor triple is degenerate; cannot build a normalizing map")]
    DegenerateFrame,

    /// Error from coordinate-function plumbing.
    #[error(transparent)]
    Coord(#[from] CoordError),

    /// Error from developing the boundary homeomorphism.
    #[error(transparent)]
    Develop(#[from] DevelopError),

    /// Error from tessellation combinatorics.
    #[error(transparent)]
    Farey(#[from] FareyError),
}
