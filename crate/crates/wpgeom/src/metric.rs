//! Closed-form Weil-Petersson metric pairings of diamond shears.
//!
//! The pairing of the unit diamond shears on two circle quadrilaterals
//! `Q = (a_1..a_4)` and `Q' = (b_1..b_4)` is
//!
//! ```text
//! g(Q, Q') = (2/pi) Re sum_{j,k} w_j(Q) conj(w_k(Q')) sigma(a_j, b_k),
//! ```
//!
//! with the weight vectors of [`QuadOnCircle::kernel_weights`] and the
//! circle kernel of [`crate::sigma`].  The metric of two finitely
//! supported diamond-shear tangent vectors at a base point with diamond
//! coordinate `h` is the bilinear sum of these pairings over the support,
//! with every quadrilateral transported by the circle map that `h`
//! develops to.

use coords::{phi, CoordError, CoordFn, CoordKind};
use develop::{develop_vertices, VertexImageMap};
use farey_core::FareyEdge;
use num_complex::Complex64;

use crate::error::WpError;
use crate::quad::QuadOnCircle;
use crate::sigma::sigma;
use crate::SIGMA_TOL;

/// The complex pairing kernel `sum_{j,k} w_j conj(w'_k) sigma(a_j, b_k)`;
/// its real part carries the metric, its imaginary part the symplectic
/// form.
pub(crate) fn pairing_kernel(q1: &QuadOnCircle, q2: &QuadOnCircle, tol: f64) -> Complex64 {
    let w1 = q1.kernel_weights();
    let w2 = q2.kernel_weights();
    let v1 = q1.vertices();
    let v2 = q2.vertices();
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..4 {
        for k in 0..4 {
            sum += w1[j] * w2[k].conj() * sigma(v1[j], v2[k], tol);
        }
    }
    sum
}

/// The Weil-Petersson pairing of the unit diamond shears on two circle
/// quadrilaterals (their common norm squared when the quadrilaterals
/// coincide).  Symmetric, positive on the diagonal, and invariant under
/// applying one disk Mobius transformation to both quadrilaterals.
pub fn metric_pairing(q1: &QuadOnCircle, q2: &QuadOnCircle) -> f64 {
    (2.0 / std::f64::consts::PI) * pairing_kernel(q1, q2, SIGMA_TOL).re
}

fn require_diamond<T: coords::CoordScalar>(f: &CoordFn<T>) -> Result<(), WpError> {
    if f.kind() != CoordKind::Diamond {
        return Err(WpError::Coord(CoordError::KindMismatch {
            expected: CoordKind::Diamond.name(),
            got: f.kind().name(),
        }));
    }
    Ok(())
}

fn image_quad(images: &VertexImageMap, e: &FareyEdge) -> Result<QuadOnCircle, WpError> {
    let q = e.quad();
    let [a, b, c, d] = q.vertices();
    let mut pts = [Complex64::new(0.0, 0.0); 4];
    for (p, v) in pts.iter_mut().zip([a, b, c, d]) {
        *p = images
            .image(v)
            .ok_or_else(|| WpError::MissingVertexImage { vertex: v.to_string() })?;
    }
    QuadOnCircle::new(pts)
}

/// The Weil-Petersson metric of two finitely supported infinitesimal
/// diamond shears at the base point with finite diamond coordinate
/// `base`:
///
/// ```text
/// <u1, u2> = sum_{e1} sum_{e2} theta1(e1) theta2(e2) g(Q(e1), Q(e2)),
/// ```
///
/// where `Q(e)` is the image under the developed base-point circle map of
/// the quadrilateral around `e`.  Passing an empty `base` evaluates the
/// metric at the identity, where the quadrilaterals keep their
/// tessellation positions.
pub fn full_metric(
    theta1: &CoordFn<f64>,
    theta2: &CoordFn<f64>,
    base: &CoordFn<f64>,
) -> Result<f64, WpError> {
    require_diamond(theta1)?;
    require_diamond(theta2)?;
    require_diamond(base)?;
    let t1 = theta1.materialize()?;
    let t2 = theta2.materialize()?;
    let h = base.materialize()?;
    if t1.is_empty() || t2.is_empty() {
        return Ok(0.0);
    }
    let max_gen = t1
        .support()
        .chain(t2.support())
        .map(|(e, _)| e.generation())
        .max()
        .unwrap_or(0);
    let shear = phi(&h)?;
    let images = develop_vertices(&shear, max_gen)?;
    let side1: Vec<(f64, QuadOnCircle)> = t1
        .support()
        .map(|(e, w)| Ok((*w, image_quad(&images, e)?)))
        .collect::<Result<_, WpError>>()?;
    let side2: Vec<(f64, QuadOnCircle)> = t2
        .support()
        .map(|(e, w)| Ok((*w, image_quad(&images, e)?)))
        .collect::<Result<_, WpError>>()?;
    let mut total = 0.0;
    for (w1, q1) in &side1 {
        for (w2, q2) in &side2 {
            total += w1 * w2 * metric_pairing(q1, q2);
        }
    }
    Ok(total)
}
