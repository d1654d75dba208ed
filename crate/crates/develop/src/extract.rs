//! Reading coordinates off circle maps: the shear of an edge is the log
//! cross-ratio of its image quadrilateral; the diamond value compares
//! vertex derivatives with the chord stretch across the edge; the
//! decoration records the horocycle sizes the map induces at the
//! vertices.

use std::collections::{BTreeMap, BTreeSet};

use farey_core::{
    angle_to_real, cross_ratio_angles, cross_ratio_real, ford_diameter, FareyEdge, Rational,
};

use crate::error::DevelopError;
use crate::homeo::{circular_distance, CircleHomeo, CircleMap, Side};
use crate::{DEGENERATE_IMAGE_TOL, DIFFERENTIABILITY_TOL, FIXED_VERTEX_SNAP_TOL};

/// Shear coordinate of a circle map at an edge: the logarithm of the
/// cross-ratio of the image of the edge's quadrilateral (which is `1`
/// before mapping).  Uses exact real-coordinate images when the map
/// provides them, circle angles otherwise.
pub fn extract_shear(h: &impl CircleMap, e: &FareyEdge) -> Result<f64, DevelopError> {
    let q = e.quad();
    let vs = q.vertices();
    let reals: Option<Vec<f64>> = vs.iter().map(|v| h.vertex_image_real(v)).collect();
    let cr = if let Some(x) = reals {
        cross_ratio_real([x[0], x[1], x[2], x[3]]).map_err(|_| DevelopError::DegenerateImage)?
    } else {
        let mut angles = [0.0; 4];
        for (slot, v) in angles.iter_mut().zip(vs.iter()) {
            let z = h.vertex_image(v);
            *slot = z.im.atan2(z.re);
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                if circular_distance(angles[i], angles[j]) < DEGENERATE_IMAGE_TOL {
                    return Err(DevelopError::DegenerateImage);
                }
            }
        }
        cross_ratio_angles(angles).map_err(|_| DevelopError::DegenerateImage)?
    };
    if !(cr > 0.0) {
        return Err(DevelopError::DegenerateImage);
    }
    Ok(cr.ln())
}

/// Two-sided vertex derivative `sqrt(h'(v+) h'(v-))` after checking the
/// sides agree within [`DIFFERENTIABILITY_TOL`] on the logarithmic scale.
fn two_sided_derivative(h: &impl CircleHomeo, v: &Rational) -> Result<f64, DevelopError> {
    let plus = h.vertex_derivative(v, Side::Plus);
    let minus = h.vertex_derivative(v, Side::Minus);
    let bad = !(plus > 0.0) || !(minus > 0.0)
        || (plus.ln() - minus.ln()).abs() > DIFFERENTIABILITY_TOL;
    if bad {
        return Err(DevelopError::NotDifferentiable { vertex: v.to_string(), plus, minus });
    }
    Ok((plus * minus).sqrt())
}

/// Diamond coordinate of a differentiable circle map at an edge
/// `(v, w)`:
///
/// ```text
/// (log h'(v) + log h'(w)) / 2 - log(|h(v) - h(w)| / |v - w|)
/// ```
///
/// It vanishes on Möbius transformations (their chord stretch is exactly
/// the geometric mean of the endpoint derivatives) and equals `t` on the
/// elementary diamond of the edge.
pub fn extract_diamond(h: &impl CircleHomeo, e: &FareyEdge) -> Result<f64, DevelopError> {
    let (va, vb) = e.endpoints();
    let log_der = two_sided_derivative(h, va)?.ln() + two_sided_derivative(h, vb)?.ln();
    let chord_in = (va.unit_point() - vb.unit_point()).norm();
    let chord_out = (h.vertex_image(va) - h.vertex_image(vb)).norm();
    if chord_out < DEGENERATE_IMAGE_TOL {
        return Err(DevelopError::DegenerateImage);
    }
    Ok(0.5 * log_der - (chord_out / chord_in).ln())
}

/// Logarithm of the horocycle contraction factor at an edge: the
/// negative of the diamond coordinate.
pub fn log_lambda(h: &impl CircleHomeo, e: &FareyEdge) -> Result<f64, DevelopError> {
    Ok(-extract_diamond(h, e)?)
}

/// Horocycle sizes a circle map induces at tessellation vertices:
/// Euclidean diameter of the horocycle at the image of each finite
/// vertex, height of the horizontal horocycle at infinity.
#[derive(Clone, Debug)]
pub struct Decoration {
    sizes: BTreeMap<Rational, f64>,
}

impl Decoration {
    /// Size at a vertex, when decorated.
    pub fn size(&self, v: &Rational) -> Option<f64> {
        self.sizes.get(v).copied()
    }

    /// All sizes, keyed by vertex.
    pub fn sizes(&self) -> &BTreeMap<Rational, f64> {
        &self.sizes
    }
}

/// Decorates every vertex incident to an edge of generation at most
/// `max_gen` (endpoints and both apexes).  For a finite vertex `p/q` at
/// real coordinate `x` with image real coordinate `X`, the size is the
/// transported Ford diameter
///
/// ```text
/// |phi'(x)| / q^2  =  D(v) (1 + X^2) / (1 + x^2) / q^2
/// ```
///
/// with `D(v)` the two-sided circle derivative and `phi` the induced map
/// of the real line; at infinity the height is `1 / D`.  Images within
/// [`FIXED_VERTEX_SNAP_TOL`] of the vertex are treated as exactly fixed,
/// so the identity reproduces the Ford circles without rounding noise.
pub fn decoration(h: &impl CircleHomeo, max_gen: usize) -> Result<Decoration, DevelopError> {
    let mut vertices: BTreeSet<Rational> = BTreeSet::new();
    for level in FareyEdge::by_generation(max_gen) {
        for e in level {
            vertices.insert(e.a().clone());
            vertices.insert(e.b().clone());
            let (m, co) = e.apexes();
            vertices.insert(m);
            vertices.insert(co);
        }
    }
    let mut sizes = BTreeMap::new();
    for v in vertices {
        let d = two_sided_derivative(h, &v)?;
        let z = h.vertex_image(&v);
        let fixed = (z - v.unit_point()).norm() <= FIXED_VERTEX_SNAP_TOL;
        let size = if v.is_infinity() {
            d.recip()
        } else if fixed {
            d * ford_diameter(&v)
        } else {
            let x = v.to_f64();
            let img_x = angle_to_real(z.im.atan2(z.re));
            d * ((1.0 + img_x * img_x) / (1.0 + x * x)) * ford_diameter(&v)
        };
        sizes.insert(v, size);
    }
    Ok(Decoration { sizes })
}
