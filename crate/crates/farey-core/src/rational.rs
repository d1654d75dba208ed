//! Extended rationals `p/q` in lowest terms, with a single point at
//! infinity stored canonically as `1/0`.
//!
//! These are the vertices of the Farey tessellation.  All arithmetic is
//! exact over [`BigInt`]; floating point enters only in the conversion to
//! boundary angles and unit-circle points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::FareyError;

/// A vertex of the Farey tessellation: `p/q` with `gcd(p, q) = 1` and
/// `q >= 0`, where `q = 0` encodes the point at infinity (normalised to
/// `1/0`, so `-1/0` compares equal to it).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    p: BigInt,
    q: BigInt,
}

impl Rational {
    /// Builds `p/q`, reducing to lowest terms and normalising signs so that
    /// `q >= 0` and infinity is stored as `1/0`.  Fails only on `0/0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, FareyError> {
        let mut p: BigInt = p.into();
        let mut q: BigInt = q.into();
        if p.is_zero() && q.is_zero() {
            return Err(FareyError::IndeterminateRational);
        }
        if q.is_zero() {
            return Ok(Self::infinity());
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            p /= &g;
            q /= &g;
        }
        Ok(Rational { p, q })
    }

    /// The integer `n/1`.
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational { p: n.into(), q: BigInt::one() }
    }

    /// The point at infinity `1/0`.
    pub fn infinity() -> Self {
        Rational { p: BigInt::one(), q: BigInt::zero() }
    }

    /// The vertex `0/1`.
    pub fn zero() -> Self {
        Rational { p: BigInt::zero(), q: BigInt::one() }
    }

    /// True for the point at infinity.
    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// Numerator (canonical sign; `1` for infinity).
    pub fn numer(&self) -> &BigInt {
        &self.p
    }

    /// Denominator (`>= 0`; `0` exactly for infinity).
    pub fn denom(&self) -> &BigInt {
        &self.q
    }

    /// The value as a float; infinity maps to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        if self.is_infinity() {
            f64::INFINITY
        } else {
            ratio_to_f64(&self.p, &self.q)
        }
    }

    /// Boundary angle of this vertex on the unit circle under the inverse
    /// Cayley transform: `theta = atan2(-2 p q, p^2 - q^2)` folded into
    /// `[0, 2*pi)`.  Infinity sits at angle `0` (the point `1`).
    pub fn disk_angle(&self) -> f64 {
        if self.is_infinity() {
            return 0.0;
        }
        let x = ratio_pair_to_f64(&(&self.p * &self.p - &self.q * &self.q), &self.p, &self.q);
        let y = ratio_pair_to_f64(&(-2 * &self.p * &self.q), &self.p, &self.q);
        let theta = y.atan2(x);
        if theta < 0.0 {
            theta + std::f64::consts::TAU
        } else {
            theta
        }
    }

    /// The image of this vertex on the unit circle,
    /// `(p^2 - q^2 - 2 i p q) / (p^2 + q^2)`; infinity maps to `1`.
    pub fn unit_point(&self) -> Complex64 {
        if self.is_infinity() {
            return Complex64::new(1.0, 0.0);
        }
        let pp = &self.p * &self.p;
        let qq = &self.q * &self.q;
        let den = &pp + &qq;
        Complex64::new(
            ratio_to_f64(&(&pp - &qq), &den),
            ratio_to_f64(&(-2 * &self.p * &self.q), &den),
        )
    }

    /// The two tessellation neighbours that sum (componentwise) to this
    /// vertex, ordered by value.  `None` for `0` and infinity, the endpoints
    /// of the base edge, which have no such decomposition.
    ///
    /// For `q >= 2` these are `r/s` and `(p-r)/(q-s)` with `p s ≡ 1 (mod q)`,
    /// `0 < s < q`; for an integer `n` with `|n| >= 2` they are `n -+ 1` and
    /// infinity; for `+-1` they are `0` and infinity.
    pub fn parents(&self) -> Option<(Rational, Rational)> {
        if self.is_infinity() || self.p.is_zero() {
            return None;
        }
        if self.q.is_one() {
            let one = BigInt::one();
            if self.p.magnitude().is_one() {
                return Some((Rational::zero(), Rational::infinity()));
            }
            let step = if self.p.is_positive() { &self.p - one } else { &self.p + one };
            return Some(order_pair(Rational::integer(step), Rational::infinity()));
        }
        let s = mod_inverse(&self.p, &self.q);
        let r = (&self.p * &s - BigInt::one()) / &self.q;
        let first = Rational { p: r.clone(), q: s.clone() };
        let second = Rational { p: &self.p - r, q: &self.q - s };
        Some(order_pair(first, second))
    }

    /// Compares positions on the circle in counterclockwise order starting
    /// from the point `1`: infinity first, then finite values ascending.
    pub fn cyclic_cmp(&self, other: &Rational) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => self.cmp(other),
        }
    }
}

/// True when `x` lies strictly inside the counterclockwise open arc from
/// `from` to `to` on the boundary circle.
pub fn in_ccw_arc(x: &Rational, from: &Rational, to: &Rational) -> bool {
    if x == from || x == to {
        return false;
    }
    match from.cyclic_cmp(to) {
        Ordering::Less => {
            from.cyclic_cmp(x) == Ordering::Less && x.cyclic_cmp(to) == Ordering::Less
        }
        Ordering::Greater => {
            from.cyclic_cmp(x) == Ordering::Less || x.cyclic_cmp(to) == Ordering::Less
        }
        Ordering::Equal => false,
    }
}

fn order_pair(a: Rational, b: Rational) -> (Rational, Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Inverse of `p` modulo `q >= 2`, reduced into `(0, q)`.
fn mod_inverse(p: &BigInt, q: &BigInt) -> BigInt {
    let p0 = p.mod_floor(q);
    let ext = p0.extended_gcd(q);
    debug_assert!(ext.gcd.is_one(), "mod_inverse requires coprime arguments");
    ext.x.mod_floor(q)
}

/// `a / b` as a float, robust to operands wider than the f64 exponent range.
pub(crate) fn ratio_to_f64(a: &BigInt, b: &BigInt) -> f64 {
    debug_assert!(!b.is_zero());
    let bits = a.bits().max(b.bits());
    if bits <= 900 {
        // Both magnitudes fit comfortably inside f64 range.
        return a.to_f64().unwrap() / b.to_f64().unwrap();
    }
    let shift = bits - 900;
    (a >> shift).to_f64().unwrap() / (b >> shift).to_f64().unwrap()
}

/// `a / (p^2 + q^2)` as a float, used for angle components.
fn ratio_pair_to_f64(a: &BigInt, p: &BigInt, q: &BigInt) -> f64 {
    ratio_to_f64(a, &(p * p + q * q))
}

impl Ord for Rational {
    /// Extended-real order: finite values by value, infinity greatest.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = FareyError;

    /// Parses `"p/q"` or a bare integer `"n"`; accepts `-1/0` for infinity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::ParseRational(s.to_owned());
        let mut parts = s.splitn(2, '/');
        let p_str = parts.next().ok_or_else(bad)?.trim();
        let p: BigInt = p_str.parse().map_err(|_| bad())?;
        match parts.next() {
            None => Ok(Rational::integer(p)),
            Some(q_str) => {
                let q: BigInt = q_str.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q).map_err(|_| bad())
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normalisation() {
        assert_eq!(Rational::new(2, 4).unwrap(), r("1/2"));
        assert_eq!(Rational::new(3, -6).unwrap(), r("-1/2"));
        assert_eq!(Rational::new(-5, 0).unwrap(), Rational::infinity());
        assert_eq!(r("-1/0"), Rational::infinity());
        assert!(Rational::new(0, 0).is_err());
        assert_eq!(r("7").to_string(), "7/1");
        assert_eq!(Rational::infinity().to_string(), "1/0");
    }

    #[test]
    fn extended_real_order() {
        assert!(r("-1") < r("0"));
        assert!(r("1/2") < r("2/3"));
        assert!(r("5/3") < Rational::infinity());
        assert_eq!(Rational::infinity().cmp(&Rational::infinity()), Ordering::Equal);
    }

    #[test]
    fn cyclic_order_starts_at_infinity() {
        let inf = Rational::infinity();
        assert_eq!(inf.cyclic_cmp(&r("-100")), Ordering::Less);
        assert_eq!(r("3").cyclic_cmp(&inf), Ordering::Greater);
        assert!(in_ccw_arc(&r("1"), &r("0"), &inf));
        assert!(!in_ccw_arc(&r("-1"), &r("0"), &inf));
        assert!(in_ccw_arc(&r("0"), &r("-1"), &inf));
        assert!(in_ccw_arc(&inf, &r("2"), &r("-5")));
    }

    #[test]
    fn disk_angles() {
        let tau = std::f64::consts::TAU;
        assert_eq!(Rational::infinity().disk_angle(), 0.0);
        assert!((r("0").disk_angle() - std::f64::consts::PI).abs() < 1e-15);
        assert!((r("1").disk_angle() - 0.75 * tau).abs() < 1e-15);
        assert!((r("-1").disk_angle() - 0.25 * tau).abs() < 1e-15);
        // Angles increase strictly with the value (ccw = infinity at angle
        // 0, then finite values ascending).
        let vals = ["-10", "-2", "-1/2", "0", "1/3", "1", "7/2", "100"];
        for w in vals.windows(2) {
            assert!(r(w[0]).disk_angle() < r(w[1]).disk_angle(), "{} vs {}", w[0], w[1]);
        }
    }

    #[test]
    fn unit_points() {
        let i = Complex64::new(0.0, 1.0);
        assert!((r("-1").unit_point() - i).norm() < 1e-15);
        assert!((r("0").unit_point() + Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((r("1").unit_point() + i).norm() < 1e-15);
        assert_eq!(Rational::infinity().unit_point(), Complex64::new(1.0, 0.0));
        let z = r("22/7").unit_point();
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parent_pairs() {
        assert_eq!(r("1/2").parents(), Some((r("0"), r("1"))));
        assert_eq!(r("2/3").parents(), Some((r("1/2"), r("1"))));
        assert_eq!(r("3/5").parents(), Some((r("1/2"), r("2/3"))));
        assert_eq!(r("-3/2").parents(), Some((r("-2"), r("-1"))));
        assert_eq!(r("1").parents(), Some((r("0"), Rational::infinity())));
        assert_eq!(r("-1").parents(), Some((r("0"), Rational::infinity())));
        assert_eq!(r("4").parents(), Some((r("3"), Rational::infinity())));
        assert_eq!(r("-4").parents(), Some((r("-3"), Rational::infinity())));
        assert_eq!(r("0").parents(), None);
        assert_eq!(Rational::infinity().parents(), None);
    }

    #[test]
    fn parents_sum_to_child() {
        for s in ["5/7", "-8/3", "13/21", "-1/9", "17/5"] {
            let v = r(s);
            let (a, b) = v.parents().unwrap();
            let (pa, qa) = (a.numer().clone(), a.denom().clone());
            let (pb, qb) = (b.numer().clone(), b.denom().clone());
            // Infinity contributes (sigma, 0) with sigma matching the side
            // of the finite partner; only |p| = 1 integers reach that case.
            assert!(!b.is_infinity() && !a.is_infinity());
            assert_eq!(v, Rational::new(pa + pb, qa + qb).unwrap());
        }
    }

    #[test]
    fn parsing_round_trip() {
        for s in ["0/1", "1/0", "-17/12", "355/113"] {
            assert_eq!(r(s).to_string(), s);
        }
        assert!("1/2/3".parse::<Rational>().is_err());
        assert!("0/0".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
    }
}
