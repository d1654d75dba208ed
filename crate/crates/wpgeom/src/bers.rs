//! Rational quadratic differentials of infinitesimal shears and their
//! harmonic Beltrami representatives.
//!
//! A finite infinitesimal shear with weight `w_j` on the geodesic with
//! real endpoints `(a_j, b_j)` projects to the holomorphic quadratic
//! differential on the lower half-plane
//!
//! ```text
//! phi(z) = (i / 2 pi) sum_j w_j (a_j - b_j)^2 / ((z - a_j)^2 (z - b_j)^2),
//! ```
//!
//! where a term with an endpoint at infinity is the limit
//! `w_j / (z - a_j)^2`.  For the four alternating unit weights of a
//! diamond shear on a quadrilateral with real corners `x_1..x_4` the
//! double poles cancel in pairs, leaving only simple poles:
//!
//! ```text
//! phi(z) = (i / pi) sum_j (-1)^{j-1}
//!          (1/(x_{j+1} - x_j) + 1/(x_j - x_{j-1})) / (z - x_j),
//! ```
//!
//! and the simple-pole coefficients annihilate `1, x, x^2`, so the
//! differential of a diamond with four finite corners decays like
//! `z^{-4}` (one corner at infinity drops this to `z^{-3}`).
//!
//! The harmonic Beltrami differential representing the same tangent
//! vector on the upper half-plane is `mu(z) = -2 y^2 phi(conj z)`.

use num_complex::Complex64;

use crate::error::WpError;

/// One additive term of a rational quadratic differential.
#[derive(Clone, Copy, Debug)]
enum BersTerm {
    /// `(i/2pi) w (a-b)^2 / ((z-a)^2 (z-b)^2)`: a shear on a finite edge.
    EdgePair { a: f64, b: f64, weight: f64 },
    /// `(i/2pi) w / (z-a)^2`: a shear on an edge reaching infinity.
    EdgeToInfinity { a: f64, weight: f64 },
    /// `c / (z-x)`: a residue left after double poles cancel.
    SimplePole { x: f64, coeff: Complex64 },
}

/// A rational quadratic differential, holomorphic on the lower half-plane
/// with poles on the extended real line.
#[derive(Clone, Debug)]
pub struct QuadDifferential {
    terms: Vec<BersTerm>,
}

impl QuadDifferential {
    /// The differential of a finite infinitesimal shear given as
    /// `(endpoints, weight)` pairs; endpoints live on the extended real
    /// line (pass infinity for the point at infinity, sign ignored).
    pub fn from_shear_support(support: &[((f64, f64), f64)]) -> Result<Self, WpError> {
        let mut terms = Vec::with_capacity(support.len());
        for &((a, b), weight) in support {
            if !weight.is_finite() {
                return Err(WpError::NonFinite { value: weight, place: "shear weight" });
            }
            let term = match (a.is_finite(), b.is_finite()) {
                (false, false) => return Err(WpError::DegenerateEdge { a, b }),
                (true, false) => BersTerm::EdgeToInfinity { a, weight },
                (false, true) => BersTerm::EdgeToInfinity { a: b, weight },
                (true, true) => {
                    if a == b {
                        return Err(WpError::DegenerateEdge { a, b });
                    }
                    BersTerm::EdgePair { a, b, weight }
                }
            };
            terms.push(term);
        }
        Ok(QuadDifferential { terms })
    }

    /// The differential of the unit diamond shear on a quadrilateral with
    /// corners `x_1..x_4` on the extended real line in circular order (at
    /// most one corner at infinity), reduced to its simple-pole form.
    pub fn from_diamond_corners(xs: [f64; 4]) -> Result<Self, WpError> {
        let infinite = xs.iter().filter(|x| !x.is_finite()).count();
        if infinite > 1 {
            return Err(WpError::InvalidQuad { reason: "more than one corner at infinity" });
        }
        for j in 0..4 {
            for k in (j + 1)..4 {
                if xs[j] == xs[k] {
                    return Err(WpError::InvalidQuad { reason: "repeated corner" });
                }
            }
        }
        let mut terms = Vec::with_capacity(4);
        for j in 0..4 {
            let x = xs[j];
            if !x.is_finite() {
                // The coefficient of a corner at infinity vanishes in the
                // limit along with its pole.
                continue;
            }
            let next = xs[(j + 1) % 4];
            let prev = xs[(j + 3) % 4];
            let t_next = if next.is_finite() { 1.0 / (next - x) } else { 0.0 };
            let t_prev = if prev.is_finite() { 1.0 / (x - prev) } else { 0.0 };
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let coeff = Complex64::new(0.0, sign / std::f64::consts::PI) * (t_next + t_prev);
            terms.push(BersTerm::SimplePole { x, coeff });
        }
        Ok(QuadDifferential { terms })
    }

    /// The differential with no terms (the zero tangent vector).
    pub fn zero() -> Self {
        QuadDifferential { terms: Vec::new() }
    }

    /// Evaluates the differential at `z` in the lower half-plane.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, WpError> {
        if !(z.im < 0.0) {
            return Err(WpError::WrongHalfPlane { im: z.im, expected: "lower" });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluates the rational function without the half-plane check (used
    /// for the harmonic Beltrami reflection, which evaluates at `conj z`).
    fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let quarter = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
        let mut sum = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            sum += match *term {
                BersTerm::EdgePair { a, b, weight } => {
                    let da = z - a;
                    let db = z - b;
                    let gap = a - b;
                    quarter * weight * (gap * gap) / (da * da * db * db)
                }
                BersTerm::EdgeToInfinity { a, weight } => {
                    let da = z - a;
                    quarter * weight / (da * da)
                }
                BersTerm::SimplePole { x, coeff } => coeff / (z - x),
            };
        }
        sum
    }
}

/// The quadratic differential of a finite infinitesimal shear, evaluated
/// at `z` in the lower half-plane.
pub fn bers_phi(support: &[((f64, f64), f64)], z: Complex64) -> Result<Complex64, WpError> {
    QuadDifferential::from_shear_support(support)?.eval(z)
}

/// The harmonic Beltrami differential `mu(z) = -2 y^2 phi(conj z)` of a
/// quadratic differential, evaluated at `z` in the upper half-plane.
pub fn harmonic_beltrami(phi: &QuadDifferential, z: Complex64) -> Result<Complex64, WpError> {
    if !(z.im > 0.0) {
        return Err(WpError::WrongHalfPlane { im: z.im, expected: "upper" });
    }
    Ok(-2.0 * z.im * z.im * phi.eval_unchecked(z.conj()))
}
