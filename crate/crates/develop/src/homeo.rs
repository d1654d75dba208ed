//! Piecewise-Möbius homeomorphisms of the unit circle, the traits for
//! querying circle maps at tessellation vertices, and the two elementary
//! per-edge maps: the single shear (two arcs, derivative jumps at the
//! endpoints) and the single diamond (four arcs, C1, all four vertices
//! fixed).

use std::f64::consts::TAU;

use farey_core::{CirclePoint, Rational, DEGENERATE_ANGLE_TOL};
use num_complex::Complex64;

use crate::error::DevelopError;
use crate::mobius::MobiusDisk;
use crate::CONTINUITY_TOL;

/// Side from which a circle point is approached: `Plus` comes around
/// counterclockwise (through the arc ending at the point), `Minus`
/// clockwise (through the arc starting at it).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Plus,
    Minus,
}

/// A map of the boundary circle, queried at tessellation vertices.
pub trait CircleMap {
    /// Image of the vertex, as a point on (or numerically near) the unit
    /// circle.
    fn vertex_image(&self, v: &Rational) -> Complex64;

    /// Image of the vertex in the real boundary coordinate of the upper
    /// half-plane, when the map can provide it directly
    /// (`f64::INFINITY` allowed).  Going through circle angles loses
    /// relative precision for images near the boundary point 1, so maps
    /// defined in real coordinates should override this.
    fn vertex_image_real(&self, v: &Rational) -> Option<f64> {
        let _ = v;
        None
    }
}

/// A circle map that also has one-sided derivatives at the vertices.
pub trait CircleHomeo: CircleMap {
    /// Modulus of the one-sided derivative at the vertex.
    fn vertex_derivative(&self, v: &Rational, side: Side) -> f64;
}

/// Counterclockwise gap from angle `from` to angle `to`, in `[0, tau)`.
pub(crate) fn ccw_gap(from: f64, to: f64) -> f64 {
    (to - from).rem_euclid(TAU)
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub(crate) fn circular_distance(s: f64, t: f64) -> f64 {
    let d = (s - t).rem_euclid(TAU);
    d.min(TAU - d)
}

/// True when two circle points coincide: exact equality for vertex
/// pairs, angular distance below [`DEGENERATE_ANGLE_TOL`] otherwise.
pub(crate) fn same_point(p: &CirclePoint, q: &CirclePoint) -> bool {
    if let (CirclePoint::Vertex(a), CirclePoint::Vertex(b)) = (p, q) {
        return a == b;
    }
    circular_distance(p.angle(), q.angle()) <= DEGENERATE_ANGLE_TOL
}

/// An orientation-preserving homeomorphism of the unit circle made of
/// finitely many Möbius arcs: breakpoints in counterclockwise order, one
/// disk transformation per arc, adjacent pieces agreeing at the shared
/// breakpoint within [`CONTINUITY_TOL`].
#[derive(Clone, Debug)]
pub struct PiecewiseMobiusHomeo {
    /// Breakpoints sorted by angle; `arcs[i]` acts on the
    /// counterclockwise arc from `breaks[i]` to the next breakpoint.
    breaks: Vec<CirclePoint>,
    /// Cached angles of the breakpoints, strictly increasing in `[0, tau)`.
    angles: Vec<f64>,
    arcs: Vec<MobiusDisk>,
}

impl PiecewiseMobiusHomeo {
    /// Builds a piecewise map from `(breakpoint, transformation of the
    /// arc starting there counterclockwise)` pairs, in any order.  Fails
    /// on empty input, coincident breakpoints, or a discontinuity.
    pub fn new(pieces: Vec<(CirclePoint, MobiusDisk)>) -> Result<Self, DevelopError> {
        if pieces.is_empty() {
            return Err(DevelopError::NoPieces);
        }
        let mut pieces: Vec<(f64, CirclePoint, MobiusDisk)> =
            pieces.into_iter().map(|(p, g)| (p.angle(), p, g)).collect();
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        for w in pieces.windows(2) {
            if w[1].0 - w[0].0 <= DEGENERATE_ANGLE_TOL {
                return Err(DevelopError::DuplicateBreakpoint(w[0].0));
            }
        }
        if pieces.len() > 1 {
            let first = pieces.first().expect("nonempty").0;
            let last = pieces.last().expect("nonempty").0;
            if first + TAU - last <= DEGENERATE_ANGLE_TOL {
                return Err(DevelopError::DuplicateBreakpoint(last));
            }
        }
        let h = PiecewiseMobiusHomeo {
            angles: pieces.iter().map(|p| p.0).collect(),
            breaks: pieces.iter().map(|p| p.1.clone()).collect(),
            arcs: pieces.iter().map(|p| p.2).collect(),
        };
        h.check_continuity()?;
        Ok(h)
    }

    fn check_continuity(&self) -> Result<(), DevelopError> {
        let n = self.breaks.len();
        for j in 0..n {
            let z = self.breaks[j].to_complex();
            let prev = &self.arcs[(j + n - 1) % n];
            let cur = &self.arcs[j];
            let incoming = prev.apply(z);
            let outgoing = cur.apply(z);
            let gap = (incoming - outgoing).norm();
            // Rounding in a Möbius evaluation scales with the local
            // expansion, so seams are measured relative to it; pieces
            // that genuinely mismatch disagree by an arc length, far
            // beyond this allowance.
            let scale = prev
                .boundary_derivative(z)
                .max(cur.boundary_derivative(z))
                .max(1.0);
            if gap > CONTINUITY_TOL * scale {
                return Err(DevelopError::BrokenContinuity { angle: self.angles[j], gap });
            }
        }
        Ok(())
    }

    /// The identity map, as a single piece.
    pub fn identity() -> Self {
        Self::from_mobius(MobiusDisk::identity())
    }

    /// A single Möbius transformation as a one-piece map (breakpoint at
    /// the boundary point 1, where nothing actually breaks).
    pub fn from_mobius(g: MobiusDisk) -> Self {
        PiecewiseMobiusHomeo {
            breaks: vec![CirclePoint::Vertex(Rational::infinity())],
            angles: vec![0.0],
            arcs: vec![g],
        }
    }

    /// Breakpoints in counterclockwise order, starting at the smallest
    /// angle.
    pub fn breakpoints(&self) -> &[CirclePoint] {
        &self.breaks
    }

    /// Arc transformations; entry `i` acts from `breakpoints()[i]`
    /// counterclockwise to the next breakpoint.
    pub fn arcs(&self) -> &[MobiusDisk] {
        &self.arcs
    }

    /// Index of the arc containing the given angle (the arc whose
    /// starting breakpoint is the last one at or before it, wrapping
    /// below the first breakpoint).
    pub fn arc_index(&self, theta: f64) -> usize {
        let theta = theta.rem_euclid(TAU);
        match self.angles.binary_search_by(|a| a.total_cmp(&theta)) {
            Ok(j) => j,
            Err(0) => self.angles.len() - 1,
            Err(j) => j - 1,
        }
    }

    /// The transformation acting at a point (at a breakpoint, either
    /// adjacent arc agrees there by continuity).
    pub fn arc_at(&self, p: &CirclePoint) -> &MobiusDisk {
        &self.arcs[self.arc_index(p.angle())]
    }

    /// Image of a circle point, renormalized to unit modulus.
    pub fn evaluate(&self, p: &CirclePoint) -> Complex64 {
        self.arc_at(p).apply_boundary(p.to_complex())
    }

    /// Image angle in `[0, tau)` of the point at angle `theta`.
    pub fn evaluate_angle(&self, theta: f64) -> f64 {
        let z = Complex64::new(theta.cos(), theta.sin());
        let w = self.arcs[self.arc_index(theta)].apply(z);
        w.im.atan2(w.re).rem_euclid(TAU)
    }

    /// Modulus of the one-sided derivative at a point.
    pub fn derivative(&self, p: &CirclePoint, side: Side) -> f64 {
        let n = self.arcs.len();
        let j = self.arc_index(p.angle());
        let idx = match side {
            // Clockwise approach: the arc starting at p, unless p sits
            // numerically at the end of arc j (the next breakpoint).
            Side::Minus => {
                let next = (j + 1) % n;
                if same_point(p, &self.breaks[next]) {
                    next
                } else {
                    j
                }
            }
            // Counterclockwise approach: the arc ending at p when p is a
            // breakpoint, the containing arc otherwise.
            Side::Plus => {
                if same_point(p, &self.breaks[j]) {
                    (j + n - 1) % n
                } else {
                    j
                }
            }
        };
        self.arcs[idx].boundary_derivative(p.to_complex())
    }

    /// Numeric preimage of a circle point under the map.
    pub fn preimage(&self, w: &CirclePoint) -> CirclePoint {
        let n = self.breaks.len();
        if n == 1 {
            return CirclePoint::Unit(self.arcs[0].inverse().apply_boundary(w.to_complex()));
        }
        // The images of the breakpoints stay in counterclockwise order;
        // find the image arc containing w and invert that piece.
        let image_angles: Vec<f64> = self
            .breaks
            .iter()
            .map(|b| {
                let w = self.evaluate(b);
                w.im.atan2(w.re)
            })
            .collect();
        let target = w.angle();
        let mut best = (0usize, f64::INFINITY);
        for i in 0..n {
            let start = image_angles[i];
            let len = ccw_gap(start, image_angles[(i + 1) % n]);
            let off = ccw_gap(start, target);
            if off <= len {
                best = (i, 0.0);
                break;
            }
            // Distance by which w misses this image arc, for the
            // rounding-at-a-boundary fallback.
            let miss = (off - len).min(TAU - off);
            if miss < best.1 {
                best = (i, miss);
            }
        }
        CirclePoint::Unit(self.arcs[best.0].inverse().apply_boundary(w.to_complex()))
    }

    /// Composition `self` after `inner`.  The breakpoints of the result
    /// are those of `inner` together with the `inner`-preimages of the
    /// breakpoints of `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self, DevelopError> {
        let mut points: Vec<CirclePoint> = inner.breaks.clone();
        for w in &self.breaks {
            let pre = inner.preimage(w);
            if !points.iter().any(|p| same_point(p, &pre)) {
                points.push(pre);
            }
        }
        Self::compose_on_breakpoints(self, inner, points)
    }

    /// Composition over a caller-supplied breakpoint set, which must
    /// contain the breakpoints of `inner` and preimages of those of
    /// `outer` (so each composed arc meets a single piece of each
    /// factor); the piece pair is read off at the arc midpoint.
    pub(crate) fn compose_on_breakpoints(
        outer: &Self,
        inner: &Self,
        points: Vec<CirclePoint>,
    ) -> Result<Self, DevelopError> {
        let mut angled: Vec<(f64, CirclePoint)> =
            points.into_iter().map(|p| (p.angle(), p)).collect();
        angled.sort_by(|x, y| x.0.total_cmp(&y.0));
        let n = angled.len();
        let mut pieces = Vec::with_capacity(n);
        for j in 0..n {
            let start = angled[j].0;
            let len = if n == 1 { TAU } else { ccw_gap(start, angled[(j + 1) % n].0) };
            let mid = (start + 0.5 * len).rem_euclid(TAU);
            let g_in = inner.arcs[inner.arc_index(mid)];
            let w = g_in.apply(Complex64::new(mid.cos(), mid.sin()));
            let g_out = outer.arcs[outer.arc_index(w.im.atan2(w.re))];
            pieces.push((angled[j].1.clone(), g_out.compose(&g_in)));
        }
        Self::new(pieces)
    }

    /// Post-composes with the unique disk Möbius transformation making
    /// the map fix the boundary points `1`, `i` and `-1` (the images of
    /// the vertices infinity, `-1` and `0`); breakpoints are unchanged.
    pub fn normalize(&self) -> Result<Self, DevelopError> {
        let pins = [Rational::infinity(), Rational::integer(-1), Rational::zero()];
        let src = pins.map(|v| self.evaluate(&CirclePoint::Vertex(v)));
        let dst = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
        ];
        let g = MobiusDisk::through_points(src, dst)?;
        let pieces = self
            .breaks
            .iter()
            .cloned()
            .zip(self.arcs.iter().map(|arc| g.compose(arc)))
            .collect();
        Self::new(pieces)
    }
}

impl CircleMap for PiecewiseMobiusHomeo {
    fn vertex_image(&self, v: &Rational) -> Complex64 {
        self.evaluate(&CirclePoint::Vertex(v.clone()))
    }
}

impl CircleHomeo for PiecewiseMobiusHomeo {
    fn vertex_derivative(&self, v: &Rational, side: Side) -> f64 {
        self.derivative(&CirclePoint::Vertex(v.clone()), side)
    }
}

/// The elementary shear along the edge with boundary endpoints `a`, `b`:
/// the identity on the counterclockwise arc from `b` to `a`, the
/// hyperbolic transformation with axis `a -> b` and translation length
/// `t` on the arc from `a` to `b`.  Both endpoints are fixed; the
/// derivative jumps from `1` to `e^t` across `a` and from `e^{-t}` to
/// `1` across `b`.
pub fn single_shear_homeo(
    a: &CirclePoint,
    b: &CirclePoint,
    t: f64,
) -> Result<PiecewiseMobiusHomeo, DevelopError> {
    let g = MobiusDisk::hyperbolic(a.to_complex(), b.to_complex(), t)?;
    PiecewiseMobiusHomeo::new(vec![(a.clone(), g), (b.clone(), MobiusDisk::identity())])
}

/// The elementary diamond map of a strictly counterclockwise boundary
/// quadrilateral `(a, b, c, d)` with diagonal `(a, c)`: hyperbolic along
/// each side, translation lengths alternating `t, -t, t, -t` around the
/// boundary.  All four vertices are fixed and the map is C1, with
/// derivative `e^t` at `a`, `c` and `e^{-t}` at `b`, `d`.
pub fn single_diamond_homeo(
    quad: &[CirclePoint; 4],
    t: f64,
) -> Result<PiecewiseMobiusHomeo, DevelopError> {
    let z: Vec<Complex64> = quad.iter().map(CirclePoint::to_complex).collect();
    let th: Vec<f64> = quad.iter().map(CirclePoint::angle).collect();
    let gaps: Vec<f64> = (0..4).map(|i| ccw_gap(th[i], th[(i + 1) % 4])).collect();
    // Counterclockwise exactly when the four gaps wind around once; a
    // misordering makes them wind two or three times.
    let degenerate = gaps.iter().any(|g| *g <= DEGENERATE_ANGLE_TOL)
        || (gaps.iter().sum::<f64>() - TAU).abs() > 1e-9;
    if degenerate {
        return Err(DevelopError::DegenerateQuad(format!(
            "angles [{}, {}, {}, {}]",
            th[0], th[1], th[2], th[3]
        )));
    }
    let pieces = vec![
        (quad[0].clone(), MobiusDisk::hyperbolic(z[0], z[1], t)?),
        (quad[1].clone(), MobiusDisk::hyperbolic(z[1], z[2], -t)?),
        (quad[2].clone(), MobiusDisk::hyperbolic(z[2], z[3], t)?),
        (quad[3].clone(), MobiusDisk::hyperbolic(z[3], z[0], -t)?),
    ];
    PiecewiseMobiusHomeo::new(pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use farey_core::{cayley_inv, FareyEdge};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn vp(s: &str) -> CirclePoint {
        CirclePoint::Vertex(r(s))
    }

    fn sample_angles(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |k| (k as f64 + 0.41) * TAU / n as f64)
    }

    #[test]
    fn single_shear_acts_by_scaling_on_half_plane_positives() {
        // Edge endpoints -1, 1 on the circle are 0, infinity in the half
        // plane; the shear there is x -> x on the negatives and
        // x -> e^t x on the positives.
        let t = 0.8;
        let h = single_shear_homeo(&vp("0"), &CirclePoint::Vertex(Rational::infinity()), t)
            .unwrap();
        for x in [0.4, 1.0, 3.5] {
            let img = h.evaluate(&CirclePoint::Unit(cayley_inv(Complex64::new(x, 0.0))));
            let want = cayley_inv(Complex64::new(t.exp() * x, 0.0));
            assert!((img - want).norm() < 1e-13, "positive {x}");
            let img = h.evaluate(&CirclePoint::Unit(cayley_inv(Complex64::new(-x, 0.0))));
            let want = cayley_inv(Complex64::new(-x, 0.0));
            assert!((img - want).norm() < 1e-13, "negative {x}");
        }
    }

    #[test]
    fn single_shear_derivative_jumps_at_the_endpoints() {
        let t = 1.1;
        let a = vp("0");
        let b = CirclePoint::Vertex(Rational::infinity());
        let h = single_shear_homeo(&a, &b, t).unwrap();
        assert!((h.derivative(&a, Side::Plus) - 1.0).abs() < 1e-14);
        assert!((h.derivative(&a, Side::Minus) - t.exp()).abs() < 1e-13);
        assert!((h.derivative(&b, Side::Plus) - (-t).exp()).abs() < 1e-13);
        assert!((h.derivative(&b, Side::Minus) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_diamond_fixes_vertices_and_is_c1() {
        let t = 0.7;
        let quad = [vp("0"), vp("1"), CirclePoint::Vertex(Rational::infinity()), vp("-1")];
        let h = single_diamond_homeo(&quad, t).unwrap();
        for (i, p) in quad.iter().enumerate() {
            assert!((h.evaluate(p) - p.to_complex()).norm() < 1e-14, "vertex {i} moves");
            let plus = h.derivative(p, Side::Plus);
            let minus = h.derivative(p, Side::Minus);
            assert!((plus - minus).abs() < 1e-13, "corner at vertex {i}");
            let want = if i % 2 == 0 { t.exp() } else { (-t).exp() };
            assert!((plus - want).abs() < 1e-13, "derivative at vertex {i}");
        }
    }

    #[test]
    fn single_diamond_rejects_misordered_quads() {
        let quad = [vp("0"), CirclePoint::Vertex(Rational::infinity()), vp("1"), vp("-1")];
        assert!(matches!(
            single_diamond_homeo(&quad, 0.5),
            Err(DevelopError::DegenerateQuad(_))
        ));
    }

    #[test]
    fn shears_along_one_edge_compose_additively() {
        let a = vp("-1");
        let b = vp("1");
        let g = single_shear_homeo(&a, &b, 0.5).unwrap();
        let h = single_shear_homeo(&a, &b, 0.9).unwrap();
        let sum = single_shear_homeo(&a, &b, 1.4).unwrap();
        let composed = g.compose(&h).unwrap();
        for theta in sample_angles(64) {
            let diff = (composed.evaluate_angle(theta) - sum.evaluate_angle(theta)).abs();
            assert!(diff.min(TAU - diff) < 1e-12, "theta = {theta}");
        }
    }

    #[test]
    fn normalization_pins_the_three_base_points() {
        let g = MobiusDisk::hyperbolic(
            Complex64::new(0.6, 0.8),
            Complex64::new(-0.8, 0.6),
            0.9,
        )
        .unwrap();
        let n = PiecewiseMobiusHomeo::from_mobius(g).normalize().unwrap();
        // A Möbius transformation fixing three boundary points is the
        // identity.
        for theta in sample_angles(32) {
            let diff = (n.evaluate_angle(theta) - theta).abs();
            assert!(diff.min(TAU - diff) < 1e-13, "theta = {theta}");
        }
    }

    #[test]
    fn continuity_validation_rejects_mismatched_pieces() {
        let a = vp("0");
        let b = CirclePoint::Vertex(Rational::infinity());
        // Two hyperbolic pieces that do not agree at the breakpoints.
        let g = MobiusDisk::hyperbolic(a.to_complex(), b.to_complex(), 0.4).unwrap();
        let bad = MobiusDisk::hyperbolic(
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            0.7,
        )
        .unwrap();
        assert!(matches!(
            PiecewiseMobiusHomeo::new(vec![(a, g), (b, bad)]),
            Err(DevelopError::BrokenContinuity { .. })
        ));
    }

    #[test]
    fn quad_image_vertices_keep_their_arcs() {
        // The base-edge quadrilateral vertices land in order under a
        // developed-looking composition of two diamonds, exercising
        // arc_index and compose on rational breakpoints.
        let base = [vp("0"), vp("1"), CirclePoint::Vertex(Rational::infinity()), vp("-1")];
        let inner = single_diamond_homeo(&base, 0.6).unwrap();
        let e = FareyEdge::new(r("0"), r("1")).unwrap();
        let q = e.quad();
        let imgs: Vec<CirclePoint> = q
            .vertices()
            .iter()
            .map(|v| CirclePoint::Unit(inner.evaluate(&CirclePoint::Vertex((*v).clone()))))
            .collect();
        let outer = single_diamond_homeo(&[imgs[0].clone(), imgs[1].clone(), imgs[2].clone(), imgs[3].clone()], -0.4)
            .unwrap();
        let composed = outer.compose(&inner).unwrap();
        // Monotone on a modest grid.
        let mut total = 0.0;
        let mut prev = composed.evaluate_angle(0.0);
        for k in 1..=256 {
            let next = composed.evaluate_angle(k as f64 * TAU / 256.0);
            total += ccw_gap(prev, next);
            prev = next;
        }
        assert!((total - TAU).abs() < 1e-9, "winding {total}");
    }
}
