//! Piecewise-quadratic boundary vector fields of single infinitesimal
//! shears.
//!
//! On the real line, shearing along an ideal geodesic with endpoints
//! `a < b` moves boundary points by the continuous field
//!
//! ```text
//! u(x) = (x - a)(x - b) / (a - b)   for a < x < b,    u = 0 elsewhere,
//! ```
//!
//! which vanishes at the endpoints.  When one endpoint is at infinity the
//! quadratic degenerates to the half-line fields `u(x) = x - a` for
//! `x > a` (support to the right) and `u(x) = -(x - a)` for `x < a`
//! (support to the left).

use crate::error::WpError;

/// The boundary vector field of a unit infinitesimal shear on one edge:
/// a continuous piecewise-quadratic function vanishing outside the edge's
/// support interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZygmundField {
    /// Support `(a, b)` with `a < b`, where `u(x) = (x - a)(x - b)/(a - b)`.
    Interval { a: f64, b: f64 },
    /// Support `(a, +inf)`, where `u(x) = x - a`.
    RightHalfLine { a: f64 },
    /// Support `(-inf, a)`, where `u(x) = -(x - a)`.
    LeftHalfLine { a: f64 },
}

/// The shear field of the edge with endpoints `a`, `b` on the extended
/// real line (pass infinity for the point at infinity; the sign of an
/// infinite endpoint is ignored).  A finite endpoint `>= 0` puts the
/// half-line support on the right, a negative one on the left, matching
/// the two degenerate quadratics.
pub fn zygmund_field(a: f64, b: f64) -> Result<ZygmundField, WpError> {
    match (a.is_finite(), b.is_finite()) {
        (false, false) => Err(WpError::DegenerateEdge { a, b }),
        (true, false) => Ok(half_line(a)),
        (false, true) => Ok(half_line(b)),
        (true, true) => {
            if a == b {
                return Err(WpError::DegenerateEdge { a, b });
            }
            Ok(ZygmundField::Interval { a: a.min(b), b: a.max(b) })
        }
    }
}

fn half_line(a: f64) -> ZygmundField {
    if a >= 0.0 {
        ZygmundField::RightHalfLine { a }
    } else {
        ZygmundField::LeftHalfLine { a }
    }
}

impl ZygmundField {
    /// The field value at a finite boundary point.
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ZygmundField::Interval { a, b } => {
                if x > a && x < b {
                    (x - a) * (x - b) / (a - b)
                } else {
                    0.0
                }
            }
            ZygmundField::RightHalfLine { a } => {
                if x > a {
                    x - a
                } else {
                    0.0
                }
            }
            ZygmundField::LeftHalfLine { a } => {
                if x < a {
                    -(x - a)
                } else {
                    0.0
                }
            }
        }
    }

    /// The closure of the support as an interval (infinite endpoints for
    /// the half-line cases).
    pub fn support(&self) -> (f64, f64) {
        match *self {
            ZygmundField::Interval { a, b } => (a, b),
            ZygmundField::RightHalfLine { a } => (a, f64::INFINITY),
            ZygmundField::LeftHalfLine { a } => (f64::NEG_INFINITY, a),
        }
    }
}
