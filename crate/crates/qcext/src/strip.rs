//! Geometry of one boundary strip and its stretch map.
//!
//! In the normalized frame a cell is the region of the upper half-plane above
//! the scalloped curve `y = u(x)` formed by unit half-circles over
//! `[n − 1/2, n + 1/2]`.  The *strip* over such an interval is rescaled so its
//! scallop spans `[−1/2, 1/2]`; repositioning a cell whose boundary vertices
//! move apart by gaps `ρ` (left) and `λ` (right) replaces that scallop by the
//! circular arc through `−ρ/2 + iρ√3/2`, `λ/2 + iλ√3/2` meeting the real
//! axis at the strip's images.  [`StripGeom::stretch`] is the closed-form
//! boundary-to-boundary map `x ↦ α(x) + iβ(x)` realizing this with constant
//! hyperbolic speed, and [`StripGeom::mu`] is the Beltrami coefficient of its
//! vertical-translation extension `x + iy ↦ α(x) + i(β(x) − u(x) + y)`, which
//! does not depend on `y`.

use num_complex::Complex64;

use crate::error::QcError;
use crate::quad::adaptive_simpson;
use crate::{STRIP_QUAD_TOL, SUP_REFINE_ITERS, SUP_SCAN_SAMPLES};

/// Height of the scalloped cell boundary: on `[n − 1/2, n + 1/2]` the unit
/// circle arc `√(1 − (x−n)²)` over the nearest integer `n`.  Continuous, with
/// kinks of slope `∓1/√3` at half-integers; `u(n) = 1`, `u(n ± 1/2) = √3/2`.
pub fn boundary_u(x: f64) -> f64 {
    let t = x - x.round();
    (1.0 - t * t).sqrt()
}

/// Slope of the scalloped boundary away from the half-integer kinks.  At an
/// exact kink the value is one of the two one-sided slopes (which one follows
/// from the tie-breaking of `round`); strip-local computations never evaluate
/// it there.
pub fn boundary_u_prime(x: f64) -> f64 {
    let t = x - x.round();
    -t / (1.0 - t * t).sqrt()
}

/// The boundary stretch of one strip evaluated at a point: position
/// `α + iβ` on the repositioned arc and the hand-differentiated derivatives
/// used by the Beltrami coefficient.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryStretch {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_prime: f64,
    pub beta_prime: f64,
}

/// One strip with left gap `ρ` and right gap `λ`, plus the derived constants
/// that appear in every evaluation: the circumradius-like scale
/// `r = √(λ² − λρ + ρ²)`, the hyperbolic width `ℓ` of the image arc, and the
/// endpoint slope parameter `K`.
///
/// Gaps must be positive and finite.  All quantities stay in f64 range for
/// gap ratios up to about `e³⁵⁰`; shear data encountered in practice stays
/// many orders of magnitude below that.
#[derive(Debug, Clone, Copy)]
pub struct StripGeom {
    rho: f64,
    lambda: f64,
    r: f64,
    ell: f64,
    k: f64,
}

impl StripGeom {
    /// Builds the strip for gap pair `(ρ, λ)`.
    ///
    /// `r` is computed as `hypot(λ − ρ/2, ρ√3/2)`, which is exact-in-spirit
    /// for all magnitudes, and `ℓ = log((ρ+λ+r)²/(3ρλ))` uses the product
    /// form of `ρ+λ−r = 3ρλ/(ρ+λ+r)` so widely skewed gaps do not cancel.
    pub fn new(rho: f64, lambda: f64) -> Result<Self, QcError> {
        if !(rho.is_finite() && lambda.is_finite() && rho > 0.0 && lambda > 0.0) {
            return Err(QcError::InvalidGap { rho, lambda });
        }
        let sqrt3 = 3.0_f64.sqrt();
        let r = (lambda - 0.5 * rho).hypot(0.5 * sqrt3 * rho);
        let sum = rho + lambda + r;
        let ell = (sum * sum / (3.0 * rho * lambda)).ln();
        let k = (2.0 * r + 2.0 * lambda - rho) / (sqrt3 * rho);
        Ok(StripGeom {
            rho,
            lambda,
            r,
            ell,
            k,
        })
    }

    /// Builds the strip whose gaps are `e^s` (left) and `e^t` (right).
    pub fn from_log_gaps(s: f64, t: f64) -> Result<Self, QcError> {
        StripGeom::new(s.exp(), t.exp())
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Hyperbolic length of the image arc between its junction points; the
    /// unit scallop itself has width `log 3`.
    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Both gaps exactly 1, i.e. the strip map is the identity.  Gap
    /// sequences are normalized so that untouched strips carry gaps that are
    /// exactly `1.0`, which makes this test meaningful on floats.
    pub fn is_identity(&self) -> bool {
        self.rho == 1.0 && self.lambda == 1.0
    }

    /// Evaluates the boundary stretch at `x ∈ (−1, 1)` (the strip itself is
    /// `[−1/2, 1/2]`; the formula is analytic on the larger interval).
    ///
    /// With `c = ℓ/log 3`, `G = (1+x)/(1−x)`, `T = e^ℓ G^c`, `S = √T`,
    /// `q = K²/T`:
    ///
    /// ```text
    /// α = ((r+λ−ρ) − (r−λ+ρ) q) / (1 + q)        β = 2rK / (S (1+q))
    /// α′ = 4rcq / ((1−x²)(1+q)²)                 β′ = 2rcK (q−1) / ((1−x²) S (1+q)²)
    /// ```
    ///
    /// The `q`-scaled forms are algebraically identical to the raw rational
    /// expressions in `T` but avoid overflow when `T` is huge and keep
    /// `α′ > 0` manifest.
    pub fn stretch(&self, x: f64) -> BoundaryStretch {
        let ln3 = 3.0_f64.ln();
        let c = self.ell / ln3;
        let g = (1.0 + x) / (1.0 - x);
        let log_t = self.ell + c * g.ln();
        let s = (0.5 * log_t).exp();
        let q = (2.0 * self.k.ln() - log_t).exp();
        let one_plus_q = 1.0 + q;
        let one_minus_x2 = 1.0 - x * x;
        let alpha = ((self.r + self.lambda - self.rho) - (self.r - self.lambda + self.rho) * q)
            / one_plus_q;
        let beta = 2.0 * self.r * self.k / (s * one_plus_q);
        let alpha_prime = 4.0 * self.r * c * q / (one_minus_x2 * one_plus_q * one_plus_q);
        let beta_prime =
            2.0 * self.r * c * self.k * (q - 1.0) / (one_minus_x2 * s * one_plus_q * one_plus_q);
        BoundaryStretch {
            alpha,
            beta,
            alpha_prime,
            beta_prime,
        }
    }

    /// Beltrami coefficient of the strip's vertical-translation extension at
    /// horizontal position `x ∈ [−1/2, 1/2]`:
    ///
    /// ```text
    /// μ(x) = (α′ − 1 + i(β′ − u′)) / (α′ + 1 + i(β′ − u′))
    /// ```
    ///
    /// where `u(x) = √(1−x²)` is the strip's own scallop.  Identically zero
    /// exactly when both gaps are 1; `|μ| < 1` always since `α′ > 0`.
    pub fn mu(&self, x: f64) -> Complex64 {
        let st = self.stretch(x);
        let u_prime = -x / (1.0 - x * x).sqrt();
        let shared = st.beta_prime - u_prime;
        Complex64::new(st.alpha_prime - 1.0, shared) / Complex64::new(st.alpha_prime + 1.0, shared)
    }

    /// `|μ(x)|²` in the cancellation-free form
    /// `1 − 4α′/((α′+1)² + (β′−u′)²)`, clamped at zero against rounding.
    pub fn mu_abs_sq(&self, x: f64) -> f64 {
        let st = self.stretch(x);
        let u_prime = -x / (1.0 - x * x).sqrt();
        let shared = st.beta_prime - u_prime;
        let denom = (st.alpha_prime + 1.0) * (st.alpha_prime + 1.0) + shared * shared;
        (1.0 - 4.0 * st.alpha_prime / denom).max(0.0)
    }

    /// Reduced hyperbolic Beltrami energy of the strip,
    /// `∫_{−1/2}^{1/2} |μ(x)|² / u(x) dx`, the exact value of the
    /// two-dimensional integral `∫∫ |μ|² y⁻² dy dx` over the region above the
    /// scallop (the inner integral collapses because `μ` has no `y`
    /// dependence).  Identity strips return exactly `0.0`.
    pub fn l2(&self) -> f64 {
        if self.is_identity() {
            return 0.0;
        }
        adaptive_simpson(
            &|x| self.mu_abs_sq(x) / (1.0 - x * x).sqrt(),
            -0.5,
            0.5,
            STRIP_QUAD_TOL,
        )
    }

    /// Supremum of `|μ|` over the strip: dense scan (endpoints included —
    /// one-sided gap data peaks exactly at `x = ±1/2`) followed by a
    /// golden-section refinement around the best sample.
    pub fn sup_mu(&self) -> f64 {
        if self.is_identity() {
            return 0.0;
        }
        let n = SUP_SCAN_SAMPLES;
        let xs = |i: usize| -0.5 + i as f64 / (n - 1) as f64;
        let mut best_i = 0;
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            let v = self.mu_abs_sq(xs(i));
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let mut a = xs(best_i.saturating_sub(1));
        let mut b = xs((best_i + 1).min(n - 1));
        let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut x1 = b - inv_phi * (b - a);
        let mut x2 = a + inv_phi * (b - a);
        let mut f1 = self.mu_abs_sq(x1);
        let mut f2 = self.mu_abs_sq(x2);
        for _ in 0..SUP_REFINE_ITERS {
            if f1 > f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - inv_phi * (b - a);
                f1 = self.mu_abs_sq(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + inv_phi * (b - a);
                f2 = self.mu_abs_sq(x2);
            }
        }
        best.max(f1).max(f2).sqrt()
    }
}

/// Boundary stretch of the `(ρ, λ)` strip at `x`; convenience wrapper around
/// [`StripGeom::stretch`].
pub fn alpha_beta(rho: f64, lambda: f64, x: f64) -> Result<BoundaryStretch, QcError> {
    Ok(StripGeom::new(rho, lambda)?.stretch(x))
}

/// Beltrami coefficient of the `(ρ, λ)` strip extension at `x`; convenience
/// wrapper around [`StripGeom::mu`].
pub fn strip_mu(rho: f64, lambda: f64, x: f64) -> Result<Complex64, QcError> {
    Ok(StripGeom::new(rho, lambda)?.mu(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Hyperbolic distance in the upper half-plane.
    fn hyp_dist(z1: Complex64, z2: Complex64) -> f64 {
        (1.0 + (z1 - z2).norm_sqr() / (2.0 * z1.im * z2.im)).acosh()
    }

    fn gamma(geom: &StripGeom, x: f64) -> Complex64 {
        let st = geom.stretch(x);
        Complex64::new(st.alpha, st.beta)
    }

    #[test]
    fn scallop_height_matches_the_unit_circle_arcs() {
        assert_eq!(boundary_u(0.0), 1.0);
        assert_eq!(boundary_u(3.0), 1.0);
        assert_eq!(boundary_u(-7.0), 1.0);
        let half = 0.75_f64.sqrt();
        assert!((boundary_u(0.5) - half).abs() < 1e-15);
        assert!((boundary_u(-0.5) - half).abs() < 1e-15);
        assert!((boundary_u(4.5) - half).abs() < 1e-15);
        let expected = 0.91_f64.sqrt();
        assert!((boundary_u(0.3) - expected).abs() < 1e-15);
        assert!((boundary_u(5.3) - expected).abs() < 1e-15);
        assert!((boundary_u(-2.7) - expected).abs() < 1e-15);
        // slope of the arc over 0 at x = 0.3 is -0.3/sqrt(0.91)
        assert!((boundary_u_prime(0.3) + 0.3 / expected).abs() < 1e-15);
        assert_eq!(boundary_u_prime(2.0), 0.0);
    }

    #[test]
    fn unit_gaps_reproduce_the_scallop_itself() {
        let geom = StripGeom::new(1.0, 1.0).unwrap();
        assert!((geom.r() - 1.0).abs() < 1e-15);
        assert!((geom.ell() - 3.0_f64.ln()).abs() < 1e-15);
        assert!((geom.k() - 3.0_f64.sqrt()).abs() < 1e-14);
        for i in 0..=40 {
            let x = -0.5 + i as f64 / 40.0;
            let st = geom.stretch(x);
            assert!((st.alpha - x).abs() < 1e-14, "alpha at {x}: {}", st.alpha);
            assert!(
                (st.beta - (1.0 - x * x).sqrt()).abs() < 1e-14,
                "beta at {x}: {}",
                st.beta
            );
            assert!((st.alpha_prime - 1.0).abs() < 1e-13);
            assert!((st.beta_prime + x / (1.0 - x * x).sqrt()).abs() < 1e-13);
        }
    }

    #[test]
    fn endpoints_land_on_the_scaled_triangle_centers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sqrt3 = 3.0_f64.sqrt();
        for _ in 0..200 {
            let rho = (4.0 * rng.gen::<f64>() - 2.0).exp();
            let lambda = (4.0 * rng.gen::<f64>() - 2.0).exp();
            let geom = StripGeom::new(rho, lambda).unwrap();
            let left = gamma(&geom, -0.5);
            let right = gamma(&geom, 0.5);
            let scale = rho.max(lambda);
            assert!(
                (left - Complex64::new(-0.5 * rho, 0.5 * sqrt3 * rho)).norm() < 1e-12 * scale,
                "left endpoint for ({rho}, {lambda}): {left}"
            );
            assert!(
                (right - Complex64::new(0.5 * lambda, 0.5 * sqrt3 * lambda)).norm()
                    < 1e-12 * scale,
                "right endpoint for ({rho}, {lambda}): {right}"
            );
        }
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-6;
        for &rho in &[0.5, 1.0, 2.0] {
            for &lambda in &[0.5, 1.0, 2.0] {
                let geom = StripGeom::new(rho, lambda).unwrap();
                for i in 0..=18 {
                    let x = -0.45 + 0.05 * i as f64;
                    let st = geom.stretch(x);
                    let plus = geom.stretch(x + h);
                    let minus = geom.stretch(x - h);
                    let da = (plus.alpha - minus.alpha) / (2.0 * h);
                    let db = (plus.beta - minus.beta) / (2.0 * h);
                    assert!(
                        (st.alpha_prime - da).abs() < 1e-7,
                        "alpha' at ({rho}, {lambda}, {x}): {} vs {da}",
                        st.alpha_prime
                    );
                    assert!(
                        (st.beta_prime - db).abs() < 1e-7,
                        "beta' at ({rho}, {lambda}, {x}): {} vs {db}",
                        st.beta_prime
                    );
                }
            }
        }
    }

    #[test]
    fn stretch_is_strictly_increasing_along_the_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let rho = (12.0 * rng.gen::<f64>() - 6.0).exp();
            let lambda = (12.0 * rng.gen::<f64>() - 6.0).exp();
            let x = rng.gen::<f64>() - 0.5;
            let st = StripGeom::new(rho, lambda).unwrap().stretch(x);
            assert!(
                st.alpha_prime > 0.0,
                "alpha' must stay positive at ({rho}, {lambda}, {x})"
            );
        }
    }

    #[test]
    fn beltrami_vanishes_exactly_for_unit_gaps() {
        let geom = StripGeom::new(1.0, 1.0).unwrap();
        for i in 0..=20 {
            let x = -0.5 + i as f64 / 20.0;
            assert!(geom.mu(x).norm() < 1e-13, "mu({x}) = {}", geom.mu(x));
            // the clamped form is exact to absolute rounding, not relative
            assert!(geom.mu_abs_sq(x) < 1e-15);
        }
        assert_eq!(geom.l2(), 0.0);
        assert_eq!(geom.sup_mu(), 0.0);
    }

    #[test]
    fn equal_plateau_gaps_keep_a_nonzero_beltrami() {
        // Equal gaps both != 1 stretch the strip uniformly; the extension is
        // genuinely quasiconformal there, with mu(0) = (c-1)/(c+1) real.
        let geom = StripGeom::new(2.0, 2.0).unwrap();
        let mu0 = geom.mu(0.0);
        assert!((mu0.re - 1.0 / 3.0).abs() < 1e-15, "mu(0) = {mu0}");
        assert!(mu0.im.abs() < 1e-15);

        let c = 0.8_f64.exp();
        let plateau = StripGeom::new(c, c).unwrap();
        let expected = 0.4_f64.tanh(); // (c-1)/(c+1) with c = e^0.8
        assert!((plateau.mu(0.0).re - expected).abs() < 1e-14);
        assert!(plateau.l2() > 0.1);
    }

    #[test]
    fn frozen_beltrami_sample() {
        let geom = StripGeom::from_log_gaps(0.5, -0.5).unwrap();
        let mu = geom.mu(0.0);
        assert!((mu.re - 0.18847571912192387).abs() < 1e-12, "re {}", mu.re);
        assert!((mu.im + 0.41349045297345255).abs() < 1e-12, "im {}", mu.im);
        assert!((mu.norm() - 0.4544199064727659).abs() < 1e-12);
        assert!(mu.norm() < 1.0);
    }

    #[test]
    fn beltrami_magnitude_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..500 {
            let rho = (8.0 * rng.gen::<f64>() - 4.0).exp();
            let lambda = (8.0 * rng.gen::<f64>() - 4.0).exp();
            let x = 0.98 * (rng.gen::<f64>() - 0.5);
            let geom = StripGeom::new(rho, lambda).unwrap();
            let direct = geom.mu(x).norm_sqr();
            let stable = geom.mu_abs_sq(x);
            assert!(
                (direct - stable).abs() < 1e-13,
                "forms disagree at ({rho}, {lambda}, {x}): {direct} vs {stable}"
            );
        }
    }

    #[test]
    fn beltrami_stays_strictly_contractive() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..500 {
            let rho = (16.0 * rng.gen::<f64>() - 8.0).exp();
            let lambda = (16.0 * rng.gen::<f64>() - 8.0).exp();
            let x = rng.gen::<f64>() - 0.5;
            let geom = StripGeom::new(rho, lambda).unwrap();
            let m = geom.mu_abs_sq(x);
            assert!((0.0..1.0).contains(&m), "|mu|^2 = {m} at ({rho}, {lambda}, {x})");
        }
    }

    #[test]
    fn small_log_gaps_bound_the_beltrami_linearly() {
        // Empirically the ratio sup|mu| / (|s| + |t|) stays near 0.75 for
        // small shears; pin the linear bound with constant 1.
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..300 {
            let s = 0.4 * (rng.gen::<f64>() - 0.5);
            let t = 0.4 * (rng.gen::<f64>() - 0.5);
            let geom = StripGeom::from_log_gaps(s, t).unwrap();
            let sup = geom.sup_mu();
            assert!(
                sup <= 1.0 * (s.abs() + t.abs()) + 1e-12,
                "sup |mu| = {sup} exceeds |s|+|t| = {} at ({s}, {t})",
                s.abs() + t.abs()
            );
        }
    }

    #[test]
    fn swapping_gaps_mirrors_the_strip() {
        let g = 0.8_f64.exp();
        let a = StripGeom::new(1.0, g).unwrap();
        let b = StripGeom::new(g, 1.0).unwrap();
        assert!((a.l2() - b.l2()).abs() < 1e-10);
        assert!((a.sup_mu() - b.sup_mu()).abs() < 1e-12);
        // mirrored evaluation matches pointwise up to conjugation
        for i in 0..=10 {
            let x = -0.5 + i as f64 / 10.0;
            let diff = (a.mu(x) - b.mu(-x).conj()).norm();
            assert!(diff < 1e-13, "mirror mismatch at {x}: {diff}");
        }
    }

    #[test]
    fn frozen_reduced_energies() {
        let g = 0.8_f64.exp();
        let plateau = StripGeom::new(g, g).unwrap().l2();
        assert!(
            (plateau - 0.16409481818182164).abs() < 1e-9,
            "plateau strip energy {plateau}"
        );
        let onesided = StripGeom::new(1.0, g).unwrap().l2();
        assert!(
            (onesided - 0.23890608523459078).abs() < 1e-9,
            "one-sided strip energy {onesided}"
        );
    }

    #[test]
    fn supremum_search_dominates_dense_sampling() {
        let g = 0.8_f64.exp();
        for geom in [
            StripGeom::new(1.0, g).unwrap(),
            StripGeom::new(g, g).unwrap(),
            StripGeom::from_log_gaps(0.5, -0.5).unwrap(),
        ] {
            let sup = geom.sup_mu();
            for i in 0..=10_000 {
                let x = -0.5 + i as f64 / 10_000.0;
                assert!(geom.mu_abs_sq(x).sqrt() <= sup + 1e-12);
            }
        }
        // frozen values; both peaks sit exactly at a strip junction
        let one_sided = StripGeom::new(1.0, g).unwrap().sup_mu();
        assert!((one_sided - 0.548198076518498).abs() < 1e-12);
        let plateau = StripGeom::new(g, g).unwrap().sup_mu();
        assert!((plateau - 0.428537708554448).abs() < 1e-12);
    }

    #[test]
    fn boundary_curve_is_stretched_linearly_in_hyperbolic_length() {
        // The stretch traverses the image arc at constant hyperbolic speed
        // relative to the unit scallop: distances scale by exactly ell/log 3.
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let unit = StripGeom::new(1.0, 1.0).unwrap();
        for _ in 0..100 {
            let rho = (4.0 * rng.gen::<f64>() - 2.0).exp();
            let lambda = (4.0 * rng.gen::<f64>() - 2.0).exp();
            let geom = StripGeom::new(rho, lambda).unwrap();
            let ratio = geom.ell() / 3.0_f64.ln();
            let x1 = 0.9 * (rng.gen::<f64>() - 0.5);
            let x2 = 0.9 * (rng.gen::<f64>() - 0.5);
            if (x1 - x2).abs() < 1e-3 {
                continue;
            }
            let image = hyp_dist(gamma(&geom, x1), gamma(&geom, x2));
            let base = hyp_dist(gamma(&unit, x1), gamma(&unit, x2));
            assert!(
                (image - ratio * base).abs() < 1e-10 * (1.0 + image),
                "stretch not linear at ({rho}, {lambda}): {image} vs {}",
                ratio * base
            );
        }
    }

    #[test]
    fn invalid_gaps_are_rejected() {
        assert!(StripGeom::new(0.0, 1.0).is_err());
        assert!(StripGeom::new(1.0, -2.0).is_err());
        assert!(StripGeom::new(f64::NAN, 1.0).is_err());
        assert!(StripGeom::new(1.0, f64::INFINITY).is_err());
        assert!(alpha_beta(-1.0, 1.0, 0.0).is_err());
        assert!(strip_mu(1.0, 0.0, 0.0).is_err());
    }
}
