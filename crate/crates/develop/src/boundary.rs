//! Circle maps given by boundary formulas rather than by piecewise
//! Möbius data: smooth angle diffeomorphisms, arbitrary callable angle
//! lifts with finite-difference derivatives, and the logarithmic
//! stretch of the real line whose shears along the integer fan decay
//! like `1 / (n log n)` — summable in square but not in absolute value.

use farey_core::{cayley_inv, Rational};
use num_complex::Complex64;

use crate::error::DevelopError;
use crate::homeo::{CircleHomeo, CircleMap, Side};
use crate::FD_STEP;

/// Smooth diffeomorphism of the circle `theta -> theta + amp sin(theta)`,
/// a homeomorphism exactly when `|amp| < 1`.
#[derive(Clone, Copy, Debug)]
pub struct AngleDiffeo {
    amp: f64,
}

impl AngleDiffeo {
    /// Creates the diffeomorphism, rejecting amplitudes with `|amp| >= 1`
    /// (the angle map would fail to be injective).
    pub fn new(amp: f64) -> Result<Self, DevelopError> {
        if !amp.is_finite() || amp.abs() >= 1.0 {
            return Err(DevelopError::InvalidAmplitude(amp));
        }
        Ok(Self { amp })
    }

    /// Image angle of `theta`.
    pub fn map_angle(&self, theta: f64) -> f64 {
        theta + self.amp * theta.sin()
    }

    /// Derivative of the angle map, `1 + amp cos(theta)`.
    pub fn derivative_angle(&self, theta: f64) -> f64 {
        1.0 + self.amp * theta.cos()
    }
}

impl CircleMap for AngleDiffeo {
    fn vertex_image(&self, v: &Rational) -> Complex64 {
        Complex64::cis(self.map_angle(v.disk_angle()))
    }
}

impl CircleHomeo for AngleDiffeo {
    fn vertex_derivative(&self, v: &Rational, _side: Side) -> f64 {
        self.derivative_angle(v.disk_angle())
    }
}

/// Circle map defined by an arbitrary lift of the angle map (a function
/// with `f(theta + 2 pi) = f(theta) + 2 pi`), differentiated by
/// Richardson-extrapolated central differences with step [`FD_STEP`].
pub struct CallableAngleMap {
    f: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl CallableAngleMap {
    /// Wraps a lift of a circle homeomorphism's angle map.
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { f: Box::new(f) }
    }

    /// Image angle of `theta`.
    pub fn map_angle(&self, theta: f64) -> f64 {
        (self.f)(theta)
    }

    /// Finite-difference derivative of the angle map.
    pub fn derivative_angle(&self, theta: f64) -> f64 {
        let d = |step: f64| ((self.f)(theta + 0.5 * step) - (self.f)(theta - 0.5 * step)) / step;
        let coarse = d(FD_STEP);
        let fine = d(0.5 * FD_STEP);
        (4.0 * fine - coarse) / 3.0
    }
}

impl CircleMap for CallableAngleMap {
    fn vertex_image(&self, v: &Rational) -> Complex64 {
        Complex64::cis(self.map_angle(v.disk_angle()))
    }
}

impl CircleHomeo for CallableAngleMap {
    fn vertex_derivative(&self, v: &Rational, _side: Side) -> f64 {
        self.derivative_angle(v.disk_angle())
    }
}

/// Homeomorphism of the circle induced by the real-line map
///
/// ```text
/// phi(x) = x log x - x            for x >= 2,
/// phi(x) = (2 log 2 - 2) + (x - 2) log 2   for x < 2,
/// ```
///
/// fixing infinity.  Because `phi` is an antiderivative of `log`, its
/// increments over unit intervals are `int_n^{n+1} log`, so the shear at
/// the edge `(n, infinity)` is `log(int_n^{n+1} log / int_{n-1}^n log)`,
/// asymptotic to `1 / (n log n)`: square-summable but not summable.  The
/// circle derivative at infinity tends to zero, so the map is C^1 at no
/// scale beyond each finite window — the coordinates decay too slowly
/// for a differentiable extension.
#[derive(Clone, Copy, Debug, Default)]
pub struct LogStretch;

impl LogStretch {
    /// Value of the real-line map.
    pub fn map_real(&self, x: f64) -> f64 {
        if x.is_infinite() {
            x
        } else if x >= 2.0 {
            x * x.ln() - x
        } else {
            let two = 2.0_f64;
            (two * two.ln() - two) + (x - 2.0) * two.ln()
        }
    }

    /// Derivative of the real-line map.
    pub fn derivative_real(&self, x: f64) -> f64 {
        if x >= 2.0 {
            x.ln()
        } else {
            2.0_f64.ln()
        }
    }
}

impl CircleMap for LogStretch {
    fn vertex_image(&self, v: &Rational) -> Complex64 {
        if v.is_infinity() {
            return Complex64::new(1.0, 0.0);
        }
        let w = cayley_inv(Complex64::new(self.map_real(v.to_f64()), 0.0));
        w / w.norm()
    }

    fn vertex_image_real(&self, v: &Rational) -> Option<f64> {
        if v.is_infinity() {
            Some(f64::INFINITY)
        } else {
            Some(self.map_real(v.to_f64()))
        }
    }
}

impl CircleHomeo for LogStretch {
    fn vertex_derivative(&self, v: &Rational, _side: Side) -> f64 {
        if v.is_infinity() {
            // phi'(x) (1 + x^2) / (1 + phi(x)^2) ~ log(x) / x -> 0.
            return 0.0;
        }
        let x = v.to_f64();
        let img = self.map_real(x);
        self.derivative_real(x) * (1.0 + x * x) / (1.0 + img * img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DevelopError;

    #[test]
    fn amplitude_one_is_rejected() {
        assert!(matches!(AngleDiffeo::new(1.0), Err(DevelopError::InvalidAmplitude(_))));
        assert!(matches!(AngleDiffeo::new(-1.3), Err(DevelopError::InvalidAmplitude(_))));
        assert!(matches!(AngleDiffeo::new(f64::NAN), Err(DevelopError::InvalidAmplitude(_))));
        assert!(AngleDiffeo::new(0.97).is_ok());
    }

    #[test]
    fn finite_differences_match_the_analytic_derivative() {
        let amp = 0.4;
        let smooth = AngleDiffeo::new(amp).unwrap();
        let callable = CallableAngleMap::new(move |t| t + amp * t.sin());
        for k in 0..32 {
            let theta = 0.19 * k as f64;
            let got = callable.derivative_angle(theta);
            let want = smooth.derivative_angle(theta);
            // Rounding noise of the central differences floors near 1e-9.
            assert!((got - want).abs() < 1e-8, "theta={theta}: {got} vs {want}");
        }
    }

    #[test]
    fn log_stretch_is_c1_across_the_bridge() {
        let h = LogStretch;
        let eps = 1e-9;
        let below = h.map_real(2.0 - eps);
        let above = h.map_real(2.0 + eps);
        assert!((above - below).abs() < 1e-8);
        assert!((h.derivative_real(2.0 - 1e-12) - h.derivative_real(2.0)).abs() < 1e-9);
    }

    #[test]
    fn log_stretch_fixes_infinity_with_vanishing_derivative() {
        let h = LogStretch;
        let inf = Rational::infinity();
        let img = h.vertex_image(&inf);
        assert_eq!(img, Complex64::new(1.0, 0.0));
        assert_eq!(h.vertex_derivative(&inf, Side::Plus), 0.0);
        assert_eq!(h.vertex_image_real(&inf), Some(f64::INFINITY));
    }

    #[test]
    fn log_stretch_is_increasing_on_samples() {
        let h = LogStretch;
        let mut prev = h.map_real(-5.0);
        let mut x = -5.0 + 0.125;
        while x < 40.0 {
            let cur = h.map_real(x);
            assert!(cur > prev, "not increasing at {x}");
            prev = cur;
            x += 0.125;
        }
    }
}
