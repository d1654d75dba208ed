//! Exact combinatorics and boundary geometry of the Farey tessellation.
//!
//! The tessellation of the hyperbolic plane whose ideal triangles have
//! vertices at the rationals (plus infinity), with an edge between `p/q`
//! and `r/s` exactly when `|p s - r q| = 1`.  This crate provides:
//!
//! * [`Rational`]: exact extended-rational vertices with canonical `p/q`
//!   form and both the linear (extended-real) and cyclic (boundary circle)
//!   orders;
//! * [`FareyEdge`] / [`FareyQuad`]: edges, their adjacent triangle pairs
//!   read counterclockwise, mediant/co-mediant apexes, the rooted dual-tree
//!   walk (`parent_edge`, `generation`) and breadth-first enumeration;
//! * [`IntegerMobius`] and [`FanChart`]: the determinant-1 integer Möbius
//!   action and the normalising charts that index the edge fan at any
//!   vertex by integers;
//! * boundary geometry in [`circle`]: Cayley transforms between the disk
//!   and half-plane models, exact and angle-stable cross-ratios, Ford
//!   circle diameters and boundary arclengths.
//!
//! Everything combinatorial is exact over big integers; floating point
//! appears only in explicitly numeric boundary quantities.

mod circle;
mod edge;
mod error;
mod mobius;
mod rational;

pub use circle::{
    angle_to_real, cayley, cayley_inv, cross_ratio, cross_ratio_angles, cross_ratio_exact,
    cross_ratio_real, farey_arclength, ford_diameter, real_to_angle, CirclePoint,
    DEGENERATE_ANGLE_TOL, UNIT_CIRCLE_TOL,
};
pub use edge::{FareyEdge, FareyQuad};
pub use error::FareyError;
pub use mobius::{fan_base_edge, fan_base_partner, to_infinity, FanChart, IntegerMobius};
pub use rational::{in_ccw_arc, Rational};
