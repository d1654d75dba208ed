//! Developing coordinate functions into boundary data: a finitely
//! supported diamond function becomes a piecewise-Möbius homeomorphism
//! (one elementary diamond per supported edge), and a shear function
//! becomes a map of vertex images propagated one cross-ratio at a time.

use std::collections::BTreeMap;

use coords::{CoordError, CoordFn, CoordKind};
use farey_core::{CirclePoint, FareyEdge, Rational};
use num_complex::Complex64;

use crate::error::DevelopError;
use crate::homeo::{
    ccw_gap, same_point, single_diamond_homeo, CircleMap, PiecewiseMobiusHomeo,
};

fn require_kind(kind: CoordKind, expected: CoordKind) -> Result<(), DevelopError> {
    if kind == expected {
        Ok(())
    } else {
        Err(DevelopError::Coord(CoordError::KindMismatch {
            expected: expected.name(),
            got: kind.name(),
        }))
    }
}

/// Develops a finitely supported diamond coordinate function into the
/// piecewise-Möbius circle homeomorphism realizing it, normalized to fix
/// the boundary points `1`, `i` and `-1`.  Supported edges are composed
/// in generation order (ties broken by the edge order); the result is
/// independent of the order up to rounding.  Lazily defined input is
/// materialized first, so it must have finite support.
pub fn develop_diamond(theta: &CoordFn<f64>) -> Result<PiecewiseMobiusHomeo, DevelopError> {
    require_kind(theta.kind(), CoordKind::Diamond)?;
    let theta = theta.materialize()?;
    let mut order: Vec<FareyEdge> = theta.support().map(|(e, _)| e.clone()).collect();
    order.sort_by_key(|e| (e.generation(), e.clone()));
    develop_diamond_ordered(&theta, &order)
}

/// Develops a diamond function composing the elementary diamonds in the
/// given edge order (edges outside the support contribute nothing).
pub fn develop_diamond_ordered(
    theta: &CoordFn<f64>,
    order: &[FareyEdge],
) -> Result<PiecewiseMobiusHomeo, DevelopError> {
    require_kind(theta.kind(), CoordKind::Diamond)?;
    let mut h = PiecewiseMobiusHomeo::identity();
    for e in order {
        let t = theta.value(e);
        if t == 0.0 {
            continue;
        }
        // Renormalizing after every step changes nothing in exact
        // arithmetic (the elementary diamond construction commutes with
        // Möbius transport of the quadrilateral), but it pins the
        // intermediate coefficients: without it the running composite
        // drifts and the final normalization cancels large factors at a
        // heavy precision cost.
        h = add_diamond(&h, e, t)?.normalize()?;
    }
    h.normalize()
}

/// One developing step: post-composes `h` with the elementary diamond of
/// the `h`-image of the edge's quadrilateral.  The new breakpoints are
/// the quadrilateral's (rational) vertices, whose images are exactly the
/// breakpoints of the outer factor.
fn add_diamond(
    h: &PiecewiseMobiusHomeo,
    e: &FareyEdge,
    t: f64,
) -> Result<PiecewiseMobiusHomeo, DevelopError> {
    let q = e.quad();
    let verts = q.vertices();
    let images = [0, 1, 2, 3]
        .map(|i| CirclePoint::Unit(h.evaluate(&CirclePoint::Vertex(verts[i].clone()))));
    let outer = single_diamond_homeo(&images, t)?;
    let mut points: Vec<CirclePoint> = h.breakpoints().to_vec();
    for v in verts {
        let p = CirclePoint::Vertex(v.clone());
        if !points.iter().any(|x| same_point(x, &p)) {
            points.push(p);
        }
    }
    PiecewiseMobiusHomeo::compose_on_breakpoints(&outer, h, points)
}

/// Vertex images of the normalized circle homeomorphism with a given
/// shear coordinate function, produced by [`develop_vertices`]: the
/// vertices `infinity`, `-1`, `0` are pinned to `1`, `i`, `-1`, and each
/// further vertex is placed by the cross-ratio of its edge's
/// quadrilateral.  Covers every vertex incident to an edge of generation
/// at most `max_gen`.
#[derive(Clone, Debug)]
pub struct VertexImageMap {
    images: BTreeMap<Rational, Complex64>,
    max_gen: usize,
}

impl VertexImageMap {
    /// Image of a vertex, when it lies in the developed range.
    pub fn image(&self, v: &Rational) -> Option<Complex64> {
        self.images.get(v).copied()
    }

    /// All developed images, keyed by vertex.
    pub fn images(&self) -> &BTreeMap<Rational, Complex64> {
        &self.images
    }

    /// Largest edge generation whose quadrilateral vertices are covered.
    pub fn max_gen(&self) -> usize {
        self.max_gen
    }

    /// Number of developed vertices.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    /// True when no vertices were developed (never the case for results
    /// of [`develop_vertices`], which always contains the three pins).
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

impl CircleMap for VertexImageMap {
    /// Image of a developed vertex.
    ///
    /// # Panics
    ///
    /// Panics when the vertex is outside the developed generation range.
    fn vertex_image(&self, v: &Rational) -> Complex64 {
        self.image(v).unwrap_or_else(|| panic!("vertex {v} outside the developed range"))
    }
}

/// The fourth vertex image `b` solving `cr(a, b, c, d) = k` for the
/// cross-ratio `(b-a)(d-c) / ((c-b)(d-a))`.
fn solve_b(a: Complex64, c: Complex64, d: Complex64, k: f64) -> Complex64 {
    (a * (d - c) + k * c * (d - a)) / ((d - c) + k * (d - a))
}

/// The fourth vertex image `d` solving `cr(a, b, c, d) = k`.
fn solve_d(a: Complex64, b: Complex64, c: Complex64, k: f64) -> Complex64 {
    ((b - a) * c - k * (c - b) * a) / ((b - a) - k * (c - b))
}

/// True when `x` lies strictly inside the counterclockwise arc from
/// `from` to `to`; landing on an endpoint (or beyond) counts as outside,
/// which is how rounding collapse is detected.
fn strictly_inside(x: Complex64, from: Complex64, to: Complex64) -> bool {
    let ang = |z: Complex64| z.im.atan2(z.re);
    let gx = ccw_gap(ang(from), ang(x));
    let gt = ccw_gap(ang(from), ang(to));
    gx > 0.0 && gx < gt
}

/// Develops a shear coordinate function into vertex images, one
/// generation of edges at a time: for each edge the image of its far
/// apex is the unique circle point giving the image quadrilateral
/// cross-ratio `e^{s(e)}`.  The input may be lazily defined (only values
/// on edges of generation at most `max_gen` are read).  Fails with
/// [`DevelopError::MonotonicityViolation`] as soon as a solved image
/// leaves its arc — the data does not describe a monotone boundary map
/// at working precision — rather than clamping it back.
pub fn develop_vertices(
    s: &CoordFn<f64>,
    max_gen: usize,
) -> Result<VertexImageMap, DevelopError> {
    require_kind(s.kind(), CoordKind::Shear)?;
    let mut images: BTreeMap<Rational, Complex64> = BTreeMap::new();
    images.insert(Rational::infinity(), Complex64::new(1.0, 0.0));
    images.insert(Rational::integer(-1), Complex64::new(0.0, 1.0));
    images.insert(Rational::zero(), Complex64::new(-1.0, 0.0));
    for level in FareyEdge::by_generation(max_gen) {
        for e in level {
            let q = e.quad();
            let [a, b, c, d] = q.vertices();
            let m = e.mediant();
            let k = s.value(&e).exp();
            let ia = images[a];
            let ic = images[c];
            let (solved, lo, hi) = if &m == b {
                // The apex inside the arc from a to c is the new vertex.
                (solve_b(ia, ic, images[d], k), ia, ic)
            } else {
                (solve_d(ia, images[b], ic, k), ic, ia)
            };
            let solved = solved / solved.norm();
            if !strictly_inside(solved, lo, hi) {
                return Err(DevelopError::MonotonicityViolation { vertex: m.to_string() });
            }
            images.insert(m, solved);
        }
    }
    Ok(VertexImageMap { images, max_gen })
}
