//! Möbius transformations of the unit disk in `SU(1,1)` form:
//! `z -> (alpha z + beta) / (conj(beta) z + conj(alpha))` with
//! `|alpha|^2 - |beta|^2 = 1`.  The pair `(alpha, beta)` is stored with
//! determinant renormalized to 1 and a canonical overall sign, so equal
//! maps have (numerically) equal representations.

use num_complex::Complex64;

use crate::error::DevelopError;

/// An orientation-preserving Möbius transformation of the unit disk.
#[derive(Clone, Copy, Debug)]
pub struct MobiusDisk {
    alpha: Complex64,
    beta: Complex64,
}

impl MobiusDisk {
    /// Wraps a coefficient pair after renormalizing `|alpha|^2 - |beta|^2`
    /// to 1 and fixing the sign; fails when the pair is not an
    /// orientation-preserving disk map (determinant not positive).
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self, DevelopError> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        if !(det > 0.0) || !det.is_finite() {
            return Err(DevelopError::InvalidMobius);
        }
        let scale = det.sqrt().recip();
        let mut m = MobiusDisk { alpha: alpha * scale, beta: beta * scale };
        m.canonicalize_sign();
        Ok(m)
    }

    /// `(alpha, beta)` describe the same map as `(-alpha, -beta)`; pick
    /// the representative whose largest coefficient component is positive.
    fn canonicalize_sign(&mut self) {
        let comps = [self.alpha.re, self.alpha.im, self.beta.re, self.beta.im];
        let mut lead = comps[0];
        for c in &comps[1..] {
            if c.abs() > lead.abs() {
                lead = *c;
            }
        }
        if lead < 0.0 {
            self.alpha = -self.alpha;
            self.beta = -self.beta;
        }
    }

    /// The identity map.
    pub fn identity() -> Self {
        MobiusDisk { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    /// Coefficient `alpha` (determinant-1, canonical sign).
    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// Coefficient `beta` (determinant-1, canonical sign).
    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// The hyperbolic transformation with repelling fixed point `a`,
    /// attracting fixed point `b` (both on the unit circle) and
    /// translation length `t`: `cosh(t/2) I + sinh(t/2) X` where `X` is
    /// the traceless involution with columns determined by the axis,
    ///
    /// ```text
    /// X = 1/(b - a) * [ a + b   -2ab  ]
    ///                 [   2    -(a+b) ]
    /// ```
    pub fn hyperbolic(a: Complex64, b: Complex64, t: f64) -> Result<Self, DevelopError> {
        let gap = b - a;
        if gap.norm() < 1e-15 {
            return Err(DevelopError::InvalidMobius);
        }
        let ch = (0.5 * t).cosh();
        let sh = (0.5 * t).sinh();
        let alpha = ch + sh * (a + b) / gap;
        let beta = sh * (-2.0 * a * b) / gap;
        MobiusDisk::new(alpha, beta)
    }

    /// The unique disk Möbius transformation sending the circle triple
    /// `src` to the circle triple `dst` (both counterclockwise); fails
    /// with [`DevelopError::InvalidMobius`] when the triples have opposite
    /// orientations or are degenerate.
    pub fn through_points(src: [Complex64; 3], dst: [Complex64; 3]) -> Result<Self, DevelopError> {
        // t_p sends (p0, p1, p2) to (0, 1, infinity); the adjugate of
        // t_dst sends them back, so adj(t_dst) * t_src is a matrix of the
        // requested map, up to a complex scalar mu.
        let t = |p: [Complex64; 3]| {
            [[p[1] - p[2], -p[0] * (p[1] - p[2])], [p[1] - p[0], -p[2] * (p[1] - p[0])]]
        };
        let s = t(src);
        let d = t(dst);
        let adj = [[d[1][1], -d[0][1]], [-d[1][0], d[0][0]]];
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = adj[i][0] * s[0][j] + adj[i][1] * s[1][j];
            }
        }
        // Project onto the SU(1,1) shape [[alpha, beta], [conj(beta),
        // conj(alpha)]]: with m = mu * [[alpha, beta], ...], the two
        // candidates below are Re(mu) (alpha, beta) and Im(mu) (alpha,
        // beta).  At least one has determinant of the order of |mu|^2;
        // both are non-positive exactly when the map flips the disk.
        let half = Complex64::new(0.5, 0.0);
        let half_over_i = Complex64::new(0.0, -0.5);
        let cand = [
            ((m[0][0] + m[1][1].conj()) * half, (m[0][1] + m[1][0].conj()) * half),
            ((m[0][0] - m[1][1].conj()) * half_over_i, (m[0][1] - m[1][0].conj()) * half_over_i),
        ];
        let det = |(a, b): &(Complex64, Complex64)| a.norm_sqr() - b.norm_sqr();
        let best = if det(&cand[0]) >= det(&cand[1]) { cand[0] } else { cand[1] };
        MobiusDisk::new(best.0, best.1)
    }

    /// Applies the map to a point of the closed disk.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.alpha * z + self.beta) / (self.beta.conj() * z + self.alpha.conj())
    }

    /// Applies the map to a boundary point and renormalizes the result to
    /// unit modulus, so chains of applications do not drift off the
    /// circle.
    pub fn apply_boundary(&self, z: Complex64) -> Complex64 {
        let w = self.apply(z);
        w / w.norm()
    }

    /// Modulus of the derivative at a boundary point:
    /// `|h'(z)| = 1 / |conj(beta) z + conj(alpha)|^2`.
    pub fn boundary_derivative(&self, z: Complex64) -> f64 {
        (self.beta.conj() * z + self.alpha.conj()).norm_sqr().recip()
    }

    /// Composition `self` after `rhs`.
    pub fn compose(&self, rhs: &MobiusDisk) -> MobiusDisk {
        let alpha = self.alpha * rhs.alpha + self.beta * rhs.beta.conj();
        let beta = self.alpha * rhs.beta + self.beta * rhs.alpha.conj();
        MobiusDisk::new(alpha, beta).expect("composition of disk maps is a disk map")
    }

    /// The inverse map.
    pub fn inverse(&self) -> MobiusDisk {
        MobiusDisk::new(self.alpha.conj(), -self.beta)
            .expect("inverse of a disk map is a disk map")
    }

    /// True when the two maps agree up to `tol` on coefficients (checked
    /// up to the common sign).
    pub fn approx_eq(&self, other: &MobiusDisk, tol: f64) -> bool {
        let direct = (self.alpha - other.alpha).norm().max((self.beta - other.beta).norm());
        let flipped = (self.alpha + other.alpha).norm().max((self.beta + other.beta).norm());
        direct.min(flipped) <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use farey_core::cayley_inv;

    fn unit(theta: f64) -> Complex64 {
        Complex64::new(theta.cos(), theta.sin())
    }

    #[test]
    fn identity_fixes_everything() {
        let id = MobiusDisk::identity();
        for theta in [0.0, 1.0, 2.5, 4.0] {
            let z = unit(theta);
            assert!((id.apply(z) - z).norm() < 1e-15);
            assert!((id.boundary_derivative(z) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn hyperbolic_fixes_axis_endpoints_with_reciprocal_derivatives() {
        let a = unit(0.7);
        let b = unit(2.9);
        let t = 0.83;
        let g = MobiusDisk::hyperbolic(a, b, t).unwrap();
        assert!((g.apply(a) - a).norm() < 1e-14, "repelling endpoint moves");
        assert!((g.apply(b) - b).norm() < 1e-14, "attracting endpoint moves");
        assert!((g.boundary_derivative(a) - t.exp()).abs() < 1e-13);
        assert!((g.boundary_derivative(b) - (-t).exp()).abs() < 1e-13);
        // The circle is preserved.
        for theta in [0.1, 1.3, 3.3, 5.1] {
            assert!((g.apply(unit(theta)).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn hyperbolic_across_the_real_axis_has_real_coefficients() {
        // Axis from -1 to 1: alpha = cosh(t/2), beta = sinh(t/2).
        let t = 1.6;
        let g = MobiusDisk::hyperbolic(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), t)
            .unwrap();
        assert!((g.alpha() - Complex64::new((0.5 * t).cosh(), 0.0)).norm() < 1e-14);
        assert!((g.beta() - Complex64::new((0.5 * t).sinh(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn hyperbolic_from_one_to_i_matches_closed_form() {
        // Axis from 1 to i: alpha = cosh(t/2) - i sinh(t/2),
        // beta = (i - 1) sinh(t/2).
        let t = 0.9_f64;
        let (ch, sh) = ((0.5 * t).cosh(), (0.5 * t).sinh());
        let g =
            MobiusDisk::hyperbolic(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), t).unwrap();
        assert!((g.alpha() - Complex64::new(ch, -sh)).norm() < 1e-14);
        assert!((g.beta() - Complex64::new(-sh, sh)).norm() < 1e-14);
    }

    #[test]
    fn hyperbolic_along_the_real_half_plane_axis_scales_coordinates() {
        // Disk endpoints -1, 1 correspond to half-plane 0, infinity, where
        // the hyperbolic map with translation length t is x -> e^t x.
        let t = 0.6;
        let g = MobiusDisk::hyperbolic(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), t)
            .unwrap();
        for x in [0.3, 1.0, -2.2, 17.0] {
            let z = cayley_inv(Complex64::new(x, 0.0));
            let w = cayley_inv(Complex64::new(t.exp() * x, 0.0));
            assert!((g.apply(z) - w).norm() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn translation_lengths_add_along_a_common_axis() {
        let a = unit(1.1);
        let b = unit(4.2);
        let g = MobiusDisk::hyperbolic(a, b, 0.4).unwrap();
        let h = MobiusDisk::hyperbolic(a, b, 1.1).unwrap();
        let sum = MobiusDisk::hyperbolic(a, b, 1.5).unwrap();
        assert!(g.compose(&h).approx_eq(&sum, 1e-13));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let g = MobiusDisk::hyperbolic(unit(0.3), unit(2.0), -0.7).unwrap();
        assert!(g.compose(&g.inverse()).approx_eq(&MobiusDisk::identity(), 1e-14));
        assert!(g.inverse().compose(&g).approx_eq(&MobiusDisk::identity(), 1e-14));
    }

    #[test]
    fn through_points_interpolates_circular_triples() {
        let src = [unit(0.2), unit(1.9), unit(3.7)];
        let dst = [unit(0.9), unit(2.4), unit(5.5)];
        let g = MobiusDisk::through_points(src, dst).unwrap();
        for k in 0..3 {
            assert!((g.apply(src[k]) - dst[k]).norm() < 1e-13, "point {k}");
        }
        // Orientation-reversing triples are rejected.
        let reversed = [dst[0], dst[2], dst[1]];
        assert!(matches!(
            MobiusDisk::through_points(src, reversed),
            Err(DevelopError::InvalidMobius)
        ));
    }

    #[test]
    fn through_points_recovers_a_known_map() {
        let g = MobiusDisk::hyperbolic(unit(0.5), unit(2.5), 1.2).unwrap();
        let src = [unit(0.0), unit(2.1), unit(4.4)];
        let dst = [g.apply(src[0]), g.apply(src[1]), g.apply(src[2])];
        let h = MobiusDisk::through_points(src, dst).unwrap();
        assert!(g.approx_eq(&h, 1e-12));
    }
}
