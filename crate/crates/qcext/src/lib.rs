//! Explicit quasiconformal extension of developed circle homeomorphisms.
//!
//! A finite balanced shear function determines a circle homeomorphism (via
//! [`coords::psi`] and [`develop::develop_diamond`]).  This crate extends that
//! boundary map to the whole open unit disk, cell by cell over the dual tree
//! of the Farey tessellation, and estimates how far the extension is from
//! being conformal.
//!
//! The construction works in a normalized upper-half-plane frame per cell:
//!
//! * [`strip`] — geometry of a single *strip* bounded by two unit half-circles:
//!   the scalloped lower boundary [`boundary_u`], the closed-form stretch
//!   map ([`StripGeom::stretch`]) that repositions one scallop onto another
//!   with prescribed endpoint gaps, and its Beltrami coefficient
//!   ([`StripGeom::mu`]), which is independent of height.
//! * [`atlas`] — per-vertex data: the fan chart, the normalized gap sequence
//!   of the image cell, and the reduced per-cell energy [`cell_l2`].
//! * [`plane`] — complex Möbius maps used to conjugate a cell (and its image)
//!   to the normalized frame.
//! * [`extension`] — the assembled map of the disk ([`QcExtension`],
//!   [`extension_map`]) and the global Beltrami estimate ([`extension_l2`]).
//!
//! All energies are hyperbolic: a strip contributes
//! `∫∫ |μ(x)|² y⁻² dy dx = ∫ |μ(x)|²/u(x) dx`, the inner integral running
//! from the scallop `y = u(x)` upward.  Integration tests check this reduced
//! form against genuine two-dimensional quadrature.

pub mod atlas;
pub mod error;
pub mod extension;
pub mod plane;
mod quad;
pub mod strip;

pub use atlas::{cell_generation, cell_l2, cell_sup, CellAtlas};
pub use error::QcError;
pub use extension::{
    extension_l2, extension_map, locate_cell, BeltramiEstimate, CellEstimate, CellFrame,
    QcExtension, StripEstimate,
};
pub use plane::PlaneMobius;
pub use strip::{alpha_beta, boundary_u, boundary_u_prime, strip_mu, BoundaryStretch, StripGeom};

/// Absolute tolerance for the adaptive quadrature of one strip's reduced
/// Beltrami energy.  Strip integrands are smooth (kinks are only at strip
/// junctions, never inside), so the budget is spent on genuine refinement.
pub const STRIP_QUAD_TOL: f64 = 1e-10;

/// Nodes of the initial scan when maximizing `|μ|` over a strip.  The scan
/// grid includes both endpoints: for one-sided gap data the supremum sits
/// exactly at a strip junction `x = ±1/2`.
pub const SUP_SCAN_SAMPLES: usize = 257;

/// Golden-section refinement iterations after the scan; 60 steps shrink the
/// bracketing interval below f64 resolution.
pub const SUP_REFINE_ITERS: usize = 60;

/// Cap on the descent depth when locating the cell containing a disk point.
/// Each step descends one level of the tessellation, so this bounds the
/// combinatorial depth of reachable cells, not a numerical tolerance.
pub const LOCATE_MAX_STEPS: usize = 20_000;
