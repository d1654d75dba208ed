//! The circle kernel `sigma` underlying the closed-form Weil-Petersson
//! pairings.
//!
//! For two points `a`, `b` on the unit circle, let `z = a * conj(b)`.  The
//! kernel is the absolutely convergent series
//!
//! ```text
//! sigma(a, b) = sum_{p >= 0} z^{p+1} / ((p+1)(p+2)(p+3)).
//! ```
//!
//! Partial fractions `1/(k(k+1)(k+2)) = 1/(2k) - 1/(k+1) + 1/(2(k+2))`
//! telescope the series against the logarithm series and give the closed
//! form (principal branch of `ln`)
//!
//! ```text
//! sigma = -ln(1 - z) (1 - z)^2 / (2 z^2) + 3/4 - 1/(2 z),
//! ```
//!
//! with the removable singularity `sigma = 1/4` at `z = 1`.  Near `z = 1`
//! the closed form is replaced by a direct partial sum of the series whose
//! truncation error after the `p = n` term is at most
//! `1/(2 (n+2)(n+3))`, the exact tail sum of `1/((p+1)(p+2)(p+3))`.

use num_complex::Complex64;

use crate::{SIGMA_SERIES_SWITCH, SIGMA_Z_ONE_TOL};

/// The kernel evaluated at a product point `z = a * conj(b)` on the unit
/// circle, offering both the closed form and direct series summation.
#[derive(Clone, Copy, Debug)]
pub struct SigmaValue {
    z: Complex64,
}

impl SigmaValue {
    /// Kernel at the pair `(a, b)` of unit-circle points: `z = a * conj(b)`.
    pub fn from_pair(a: Complex64, b: Complex64) -> Self {
        SigmaValue { z: a * b.conj() }
    }

    /// Kernel at an explicit product point `z` on the unit circle.
    pub fn from_product(z: Complex64) -> Self {
        SigmaValue { z }
    }

    /// The product point this kernel value is taken at.
    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Closed-form value `-ln(1-z)(1-z)^2/(2 z^2) + 3/4 - 1/(2 z)` with the
    /// exact limit `1/4` at `z = 1`.
    pub fn closed_form(&self) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let w = one - self.z;
        if w.norm() <= SIGMA_Z_ONE_TOL {
            return Complex64::new(0.25, 0.0);
        }
        let z2 = self.z * self.z;
        -w.ln() * w * w / (2.0 * z2) + 0.75 - 1.0 / (2.0 * self.z)
    }

    /// Partial series sum `sum_{p=0}^{n} z^{p+1}/((p+1)(p+2)(p+3))`.
    pub fn series(&self, n: usize) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = self.z;
        for p in 0..=n {
            let k = (p + 1) as f64;
            sum += power / (k * (k + 1.0) * (k + 2.0));
            power *= self.z;
        }
        sum
    }

    /// Upper bound on `|series(n) - sigma|` for `|z| <= 1`: the exact tail
    /// `sum_{p > n} 1/((p+1)(p+2)(p+3)) = 1/(2 (n+2)(n+3))`.
    pub fn series_tail_bound(n: usize) -> f64 {
        let m = n as f64;
        1.0 / (2.0 * (m + 2.0) * (m + 3.0))
    }

    /// Series length whose tail bound does not exceed `tol`.
    pub fn series_len_for(tol: f64) -> usize {
        (0.5 / tol.max(f64::MIN_POSITIVE)).sqrt().ceil() as usize
    }

    /// The kernel value to within `tol` of the infinite series: the closed
    /// form away from `z = 1`, a direct partial sum inside the switch
    /// window `|1 - z| < SIGMA_SERIES_SWITCH` where the closed form loses
    /// significance, and the exact limit at `z = 1` itself.
    pub fn evaluate(&self, tol: f64) -> Complex64 {
        let w = Complex64::new(1.0, 0.0) - self.z;
        if w.norm() <= SIGMA_Z_ONE_TOL {
            Complex64::new(0.25, 0.0)
        } else if w.norm() < SIGMA_SERIES_SWITCH {
            self.series(Self::series_len_for(tol))
        } else {
            self.closed_form()
        }
    }
}

/// The kernel `sigma(a, b)` for unit-circle points, within `tol` of the
/// defining series.
pub fn sigma(a: Complex64, b: Complex64, tol: f64) -> Complex64 {
    SigmaValue::from_pair(a, b).evaluate(tol)
}
