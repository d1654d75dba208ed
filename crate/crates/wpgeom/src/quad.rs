//! Ideal quadrilaterals on the unit circle.
//!
//! A [`QuadOnCircle`] stores four distinct unit-modulus vertices in strict
//! counterclockwise order together with the convention that its diagonal is
//! the chord from the first to the third vertex.  The unit diamond shear on
//! such a quadrilateral is the infinitesimal deformation shearing the two
//! triangles cut off by the diagonal; rotating the labels by one step
//! selects the other diagonal and negates that deformation.

use farey_core::FareyEdge;
use num_complex::Complex64;

use crate::error::WpError;
use crate::UNIT_MODULUS_TOL;

/// Four distinct points on the unit circle in strict counterclockwise
/// order; the diagonal is the chord `(vertices[0], vertices[2])`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadOnCircle {
    vertices: [Complex64; 4],
}

impl QuadOnCircle {
    /// Validates and stores four counterclockwise unit-circle points.
    pub fn new(vertices: [Complex64; 4]) -> Result<Self, WpError> {
        for v in &vertices {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(WpError::InvalidQuad { reason: "vertex is not finite" });
            }
            if (v.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
                return Err(WpError::InvalidQuad { reason: "vertex is off the unit circle" });
            }
        }
        // Angles of the later vertices relative to the first must be
        // strictly increasing in (0, 2 pi): that is exactly strict
        // counterclockwise order (and implies the points are distinct).
        let rel = |v: Complex64| {
            let t = (v / vertices[0]).arg();
            if t <= 0.0 {
                t + std::f64::consts::TAU
            } else {
                t
            }
        };
        let (t1, t2, t3) = (rel(vertices[1]), rel(vertices[2]), rel(vertices[3]));
        if !(t1 < t2 && t2 < t3 && t3 < std::f64::consts::TAU) {
            return Err(WpError::InvalidQuad { reason: "vertices are not in strict counterclockwise order" });
        }
        Ok(QuadOnCircle { vertices })
    }

    /// The quadrilateral of a tessellation edge: the edge's two endpoints
    /// and the apexes of its two triangles, placed on the circle, with the
    /// edge itself as the diagonal.
    pub fn from_edge(e: &FareyEdge) -> Self {
        let q = e.quad();
        let [a, b, c, d] = q.vertices();
        QuadOnCircle {
            vertices: [a.unit_point(), b.unit_point(), c.unit_point(), d.unit_point()],
        }
    }

    /// The vertices in counterclockwise order.
    pub fn vertices(&self) -> &[Complex64; 4] {
        &self.vertices
    }

    /// The endpoints of the selected diagonal.
    pub fn diagonal(&self) -> (Complex64, Complex64) {
        (self.vertices[0], self.vertices[2])
    }

    /// The same quadrilateral with the other diagonal selected (labels
    /// rotated by one step); the unit diamond shear on it is the negative
    /// of the one on `self`.
    pub fn other_diagonal(&self) -> QuadOnCircle {
        let [a, b, c, d] = self.vertices;
        QuadOnCircle { vertices: [b, c, d, a] }
    }

    /// The quadrilateral rotated rigidly by a unit-modulus factor.
    pub fn rotated(&self, phase: Complex64) -> Result<QuadOnCircle, WpError> {
        QuadOnCircle::new([
            phase * self.vertices[0],
            phase * self.vertices[1],
            phase * self.vertices[2],
            phase * self.vertices[3],
        ])
    }

    /// The weight vector of the pairing kernel: writing the vertices
    /// cyclically as `a_1..a_4`,
    ///
    /// ```text
    /// w_j = (-1)^j a_j^2 (a_{j+1} - a_{j-1})
    ///       / ((a_{j+1} - a_j)(a_j - a_{j-1})).
    /// ```
    ///
    /// The pairing of the unit diamond shears on two quadrilaterals is the
    /// double sum `sum_{j,k} w_j conj(w'_k) sigma(a_j, b_k)` (real part
    /// scaled by `2/pi` for the metric, negative imaginary part for the
    /// symplectic form).
    pub fn kernel_weights(&self) -> [Complex64; 4] {
        let v = &self.vertices;
        let mut w = [Complex64::new(0.0, 0.0); 4];
        for j in 0..4 {
            let a = v[j];
            let next = v[(j + 1) % 4];
            let prev = v[(j + 3) % 4];
            let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
            w[j] = sign * a * a * (next - prev) / ((next - a) * (a - prev));
        }
        w
    }

    /// The vertices carried to the extended real line by the boundary
    /// Cayley map `x = i (1 + w) / (1 - w)` (the inverse of
    /// `x -> (x - i)/(x + i)`); the circle point `1` maps to infinity.
    pub fn real_positions(&self) -> [f64; 4] {
        let mut xs = [0.0_f64; 4];
        for (x, v) in xs.iter_mut().zip(self.vertices.iter()) {
            *x = if v.re == 1.0 && v.im == 0.0 {
                f64::INFINITY
            } else {
                let w = Complex64::new(0.0, 1.0) * (1.0 + v) / (1.0 - v);
                w.re
            };
        }
        xs
    }
}
