//! Möbius maps of the extended complex plane with complex coefficients.
//!
//! These conjugate a tessellation cell — and its image under the developed
//! boundary homeomorphism — to the normalized frame in which the cell is the
//! region above the scalloped curve: the vertex goes to `∞`, its fan base
//! partner to `0`, and the fan neighbour of index `−1` to `−1`.

use num_complex::Complex64;

use crate::error::QcError;

/// A Möbius transformation `z ↦ (az + b)/(cz + d)` with complex entries,
/// kept as an (unnormalized) invertible matrix.
#[derive(Debug, Clone, Copy)]
pub struct PlaneMobius {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl PlaneMobius {
    /// Builds the map from matrix entries; rejects non-finite entries and
    /// determinants indistinguishable from zero at the entry scale.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, QcError> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite();
        let det = a * d - b * c;
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if !finite || !(det.norm() > 1e-24 * scale * scale) {
            return Err(QcError::DegenerateFrame);
        }
        Ok(PlaneMobius { a, b, c, d })
    }

    /// The standard disk-to-half-plane map `z ↦ −i(z+1)/(z−1)`, sending
    /// `1 ↦ ∞`, `−1 ↦ 0`, `i ↦ −1` and the disk interior onto `Im > 0`.
    pub fn cayley() -> Self {
        let i = Complex64::i();
        PlaneMobius {
            a: -i,
            b: -i,
            c: Complex64::new(1.0, 0.0),
            d: Complex64::new(-1.0, 0.0),
        }
    }

    /// The unique Möbius map sending `(z1, z2, z3) ↦ (∞, 0, −1)`:
    /// `z ↦ k (z − z2)/(z − z1)` with `k = −(z3 − z1)/(z3 − z2)`.
    pub fn normalized_frame(
        z1: Complex64,
        z2: Complex64,
        z3: Complex64,
    ) -> Result<Self, QcError> {
        let k = -(z3 - z1) / (z3 - z2);
        PlaneMobius::new(k, -k * z2, Complex64::new(1.0, 0.0), -z1)
    }

    /// Evaluates at a finite point.  A pole maps to a non-finite value the
    /// caller is expected to avoid (frames are only evaluated away from
    /// their anchor vertex).
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Matrix inverse (projectively: the inverse transformation).
    pub fn inverse(&self) -> Self {
        PlaneMobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Composition `self ∘ rhs` as a matrix product.
    pub fn compose(&self, rhs: &Self) -> Self {
        PlaneMobius {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}
