//! Boundary geometry: points on the unit circle, the Cayley transform
//! between the disk and the upper half-plane, cross-ratios (exact on
//! vertices, angle-stable on numeric points), Ford circle sizes and the
//! boundary arclength of tessellation edges.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::edge::FareyEdge;
use crate::error::FareyError;
use crate::rational::{ratio_to_f64, Rational};

/// Tolerance for membership of a numeric point on the unit circle.
pub const UNIT_CIRCLE_TOL: f64 = 1e-12;

/// Angular separation below which a numeric point configuration is treated
/// as degenerate for cross-ratio purposes.
pub const DEGENERATE_ANGLE_TOL: f64 = 1e-13;

/// A point of the boundary circle: either an exact tessellation vertex or
/// a numeric point on the unit circle.
#[derive(Clone, Debug)]
pub enum CirclePoint {
    /// An exact vertex `p/q` (placed at its standard unit-circle image).
    Vertex(Rational),
    /// A numeric point, validated to lie within [`UNIT_CIRCLE_TOL`] of the
    /// unit circle.
    Unit(Complex64),
}

impl CirclePoint {
    /// Wraps a numeric point after checking it sits on the unit circle.
    pub fn unit(z: Complex64) -> Result<Self, FareyError> {
        let n = z.norm();
        if (n - 1.0).abs() > UNIT_CIRCLE_TOL {
            return Err(FareyError::NotOnCircle(n));
        }
        Ok(CirclePoint::Unit(z))
    }

    /// The point's angle in `[0, 2*pi)`.
    pub fn angle(&self) -> f64 {
        match self {
            CirclePoint::Vertex(v) => v.disk_angle(),
            CirclePoint::Unit(z) => {
                let t = z.im.atan2(z.re);
                if t < 0.0 {
                    t + std::f64::consts::TAU
                } else {
                    t
                }
            }
        }
    }

    /// The point as a complex number on (or numerically near) the circle.
    pub fn to_complex(&self) -> Complex64 {
        match self {
            CirclePoint::Vertex(v) => v.unit_point(),
            CirclePoint::Unit(z) => *z,
        }
    }
}

impl From<Rational> for CirclePoint {
    fn from(v: Rational) -> Self {
        CirclePoint::Vertex(v)
    }
}

/// Cayley transform from the unit disk to the upper half-plane:
/// `w = -i (z + 1) / (z - 1)`.  The boundary point `1` maps to infinity.
pub fn cayley(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    -i * (z + 1.0) / (z - 1.0)
}

/// Inverse Cayley transform, half-plane to disk: `z = (w - i) / (w + i)`.
pub fn cayley_inv(w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    (w - i) / (w + i)
}

/// Boundary Cayley transform: circle angle to extended real coordinate,
/// `x = -cot(theta / 2)`; angle 0 maps to infinity.
pub fn angle_to_real(theta: f64) -> f64 {
    let t = (0.5 * theta).tan();
    if t == 0.0 {
        f64::INFINITY
    } else {
        -1.0 / t
    }
}

/// Inverse boundary Cayley transform: extended real to circle angle in
/// `[0, 2*pi)`; infinities map to angle 0.
pub fn real_to_angle(x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    // From z = (x - i)/(x + i): angle = atan2(-2x, x^2 - 1).
    let theta = (-2.0 * x).atan2(x * x - 1.0);
    if theta < 0.0 {
        theta + std::f64::consts::TAU
    } else {
        theta
    }
}

/// Exact cross-ratio `(b - a)(d - c) / ((c - b)(d - a))` of four vertices,
/// as a reduced integer fraction `(numerator, denominator)` with positive
/// denominator.  Infinite vertices are handled uniformly: writing
/// `N(x, y) = p_x q_y - p_y q_x`, the value is
/// `N(b,a) N(d,c) / (N(c,b) N(d,a))` with all denominators cancelling.
pub fn cross_ratio_exact(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<(BigInt, BigInt), FareyError> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i] == pts[j] {
                return Err(FareyError::DegenerateCrossRatio);
            }
        }
    }
    let n = |x: &Rational, y: &Rational| x.numer() * y.denom() - y.numer() * x.denom();
    let num = n(b, a) * n(d, c);
    let mut den = n(c, b) * n(d, a);
    if den.is_zero() {
        return Err(FareyError::DegenerateCrossRatio);
    }
    let mut num = num;
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let g = num.gcd(&den);
    Ok((num / &g, den / g))
}

/// Cross-ratio of four circle points.  Exact vertices use
/// [`cross_ratio_exact`]; otherwise the numerically stable angle form
/// `sin((tb-ta)/2) sin((td-tc)/2) / (sin((tc-tb)/2) sin((td-ta)/2))`
/// is used, which is exactly the chordal cross-ratio (the unimodular
/// phase factors cancel).
pub fn cross_ratio(
    a: &CirclePoint,
    b: &CirclePoint,
    c: &CirclePoint,
    d: &CirclePoint,
) -> Result<f64, FareyError> {
    if let (CirclePoint::Vertex(a), CirclePoint::Vertex(b), CirclePoint::Vertex(c), CirclePoint::Vertex(d)) =
        (a, b, c, d)
    {
        let (num, den) = cross_ratio_exact(a, b, c, d)?;
        return Ok(ratio_to_f64(&num, &den));
    }
    let t = [a.angle(), b.angle(), c.angle(), d.angle()];
    cross_ratio_angles(t)
}

/// Angle form of the circle cross-ratio; inputs are angles in radians.
pub fn cross_ratio_angles([ta, tb, tc, td]: [f64; 4]) -> Result<f64, FareyError> {
    let s = |x: f64, y: f64| (0.5 * (x - y)).sin();
    let (sba, sdc, scb, sda) = (s(tb, ta), s(td, tc), s(tc, tb), s(td, ta));
    for v in [sba, sdc, scb, sda] {
        if v.abs() < DEGENERATE_ANGLE_TOL {
            return Err(FareyError::DegenerateCrossRatio);
        }
    }
    Ok((sba * sdc) / (scb * sda))
}

/// Cross-ratio in real (half-plane) coordinates, tolerant of one infinite
/// entry: `(b-a)(d-c)/((c-b)(d-a))` with the usual limits at infinity.
pub fn cross_ratio_real([a, b, c, d]: [f64; 4]) -> Result<f64, FareyError> {
    let inf_count = [a, b, c, d].iter().filter(|x| x.is_infinite()).count();
    if inf_count > 1 {
        return Err(FareyError::DegenerateCrossRatio);
    }
    let val = if a.is_infinite() {
        // (b - a)/(d - a) -> 1.
        (d - c) / (c - b)
    } else if b.is_infinite() {
        // (b - a)/(c - b) -> -1.
        (c - d) / (d - a)
    } else if c.is_infinite() {
        // (d - c)/(c - b) -> -1.
        (b - a) / (a - d)
    } else if d.is_infinite() {
        // (d - c)/(d - a) -> 1.
        (b - a) / (c - b)
    } else {
        ((b - a) * (d - c)) / ((c - b) * (d - a))
    };
    if val.is_finite() {
        Ok(val)
    } else {
        Err(FareyError::DegenerateCrossRatio)
    }
}

/// Diameter of the Ford circle at a vertex: `1/q^2` for finite `p/q`
/// (tangent to the boundary circle at the vertex), `1` for infinity.
pub fn ford_diameter(v: &Rational) -> f64 {
    if v.is_infinity() {
        1.0
    } else {
        let q2 = v.denom() * v.denom();
        match q2.to_f64() {
            Some(x) if x.is_finite() => 1.0 / x,
            _ => 0.0,
        }
    }
}

/// Arclength of the boundary arc cut off by an edge: the length of the arc
/// between the endpoints on the side away from the base edge (for the base
/// edge itself, the side of positive values, length `pi`).
pub fn farey_arclength(e: &FareyEdge) -> f64 {
    let (a, b) = e.endpoints();
    if b.is_infinity() {
        if e.is_base() {
            return std::f64::consts::PI;
        }
        let ta = a.disk_angle();
        // Far side of (k, infinity): the arc not containing 0, i.e. from
        // angle ta up to 2*pi for k > 0, or from 0 to ta for k < 0.
        if a.numer().is_positive() {
            std::f64::consts::TAU - ta
        } else {
            ta
        }
    } else {
        // Finite endpoints a < b: angles increase with the value, and the
        // child arc runs from the a-angle up to the b-angle.
        b.disk_angle() - a.disk_angle()
    }
}
