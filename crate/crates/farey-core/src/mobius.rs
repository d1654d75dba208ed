//! Integer Möbius transformations (determinant 1) acting on the vertices
//! of the Farey tessellation, and the fan charts they induce: for every
//! vertex `v` there is a unique such transformation sending `v` to
//! infinity and mapping the edges at `v` onto the integer fan
//! `(n, infinity)`, with `n` increasing counterclockwise around `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::edge::FareyEdge;
use crate::error::FareyError;
use crate::rational::Rational;

/// An element of the integer Möbius group: `z -> (a z + b) / (c z + d)`
/// with `a d - b c = 1`.  The representative is canonicalised so that the
/// first nonzero entry of `(a, b, c, d)` is positive, making equality
/// meaningful on the projective group.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntegerMobius {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl IntegerMobius {
    /// Builds the transformation with matrix `[[a, b], [c, d]]`; the
    /// determinant must be exactly 1 (or -1 after global negation, which
    /// represents the same projective element only when it is 1; -1 is
    /// rejected).
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, FareyError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(FareyError::NotUnimodular(det.to_string()));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let flip = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_negative())
            .unwrap_or(false);
        if flip {
            IntegerMobius { a: -a, b: -b, c: -c, d: -d }
        } else {
            IntegerMobius { a, b, c, d }
        }
    }

    /// The identity transformation.
    pub fn identity() -> Self {
        IntegerMobius {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// The translation `z -> z + n`.
    pub fn translation(n: impl Into<BigInt>) -> Self {
        IntegerMobius {
            a: BigInt::one(),
            b: n.into(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    /// Matrix entries `(a, b, c, d)` of the canonical representative.
    pub fn entries(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Applies the transformation to a vertex (exact projective action;
    /// infinity maps to `a/c`).
    pub fn apply(&self, v: &Rational) -> Rational {
        let (p, q) = (v.numer(), v.denom());
        Rational::new(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
            .expect("determinant-1 action cannot produce 0/0")
    }

    /// Applies the transformation to an edge (the image of an edge is an
    /// edge: the action preserves the unimodularity pairing).
    pub fn apply_edge(&self, e: &FareyEdge) -> FareyEdge {
        FareyEdge::new(self.apply(e.a()), self.apply(e.b()))
            .expect("unimodular images of edges are edges")
    }

    /// Group composition: `(self o rhs)(z) = self(rhs(z))`.
    pub fn compose(&self, rhs: &IntegerMobius) -> IntegerMobius {
        Self::canonical(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> IntegerMobius {
        Self::canonical(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }
}

/// The partner of `v` on its base edge: the edge at `v` that the fan chart
/// sends to `(0, infinity)`.  Pinned choices: infinity and `+-1` pair with
/// `0`; `0` pairs with infinity; every other vertex pairs with the smaller
/// of its two parents.
pub fn fan_base_partner(v: &Rational) -> Rational {
    if v.is_infinity() {
        return Rational::zero();
    }
    match v.parents() {
        None => Rational::infinity(), // v = 0
        Some((small, _)) => small,    // covers +-1 (small parent 0) and the rest
    }
}

/// The base edge of the fan at `v`: `(v's partner, v)` as an edge.
pub fn fan_base_edge(v: &Rational) -> FareyEdge {
    FareyEdge::new(v.clone(), fan_base_partner(v)).expect("partner spans an edge")
}

/// The unique integer Möbius transformation `A` with `A(v) = infinity` and
/// `A(fan_base_partner(v)) = 0`; it carries the edges at `v` onto the
/// integer fan, counterclockwise order becoming increasing index.
pub fn to_infinity(v: &Rational) -> IntegerMobius {
    if v.is_infinity() {
        // Partner 0 is already fixed: the identity is the pinned chart.
        return IntegerMobius::identity();
    }
    let (p, q) = (v.numer().clone(), v.denom().clone());
    let ext = p.extended_gcd(&q);
    debug_assert!(ext.gcd.is_one());
    // B = [[-x, -y], [q, -p]] has determinant x p + y q = 1 and B(v) = inf.
    let b = IntegerMobius::new(-ext.x, -ext.y, q, -p).expect("construction has determinant 1");
    let t = b.apply(&fan_base_partner(v));
    debug_assert!(t.denom().is_one(), "image of a neighbour of v is an integer");
    IntegerMobius::translation(-t.numer().clone()).compose(&b)
}

/// The fan chart at a vertex: caches the normalising transformation and
/// converts between edges at `v` and their integer fan indices.
#[derive(Clone, Debug)]
pub struct FanChart {
    vertex: Rational,
    to_inf: IntegerMobius,
    from_inf: IntegerMobius,
}

impl FanChart {
    /// Builds the chart at `v`.
    pub fn new(v: &Rational) -> Self {
        let to_inf = to_infinity(v);
        let from_inf = to_inf.inverse();
        FanChart { vertex: v.clone(), to_inf, from_inf }
    }

    /// The chart's vertex.
    pub fn vertex(&self) -> &Rational {
        &self.vertex
    }

    /// The normalising transformation `A` (vertex to infinity).
    pub fn transform(&self) -> &IntegerMobius {
        &self.to_inf
    }

    /// Index of an edge at the chart's vertex: the integer `A(w)` where `w`
    /// is the other endpoint.  Index 0 is the base edge; indices increase
    /// counterclockwise around the vertex.
    pub fn index(&self, e: &FareyEdge) -> Result<i64, FareyError> {
        let w = e.other(&self.vertex).ok_or_else(|| {
            FareyError::NotInFan(e.a().to_string(), e.b().to_string(), self.vertex.to_string())
        })?;
        let image = self.to_inf.apply(w);
        debug_assert!(image.denom().is_one(), "fan neighbours map to integers");
        image.numer().try_into().map_err(|_| FareyError::FanIndexOverflow)
    }

    /// The edge at the chart's vertex with the given index.
    pub fn edge(&self, n: i64) -> FareyEdge {
        let w = self.from_inf.apply(&Rational::integer(n));
        FareyEdge::new(self.vertex.clone(), w).expect("fan neighbours span edges")
    }

    /// The other endpoint of the edge with the given index.
    pub fn neighbour(&self, n: i64) -> Rational {
        self.from_inf.apply(&Rational::integer(n))
    }

    /// Consecutive edges of the fan from index `lo` through `hi`.
    pub fn edges(&self, lo: i64, hi: i64) -> Vec<FareyEdge> {
        (lo..=hi).map(|n| self.edge(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn e(a: &str, b: &str) -> FareyEdge {
        FareyEdge::new(r(a), r(b)).unwrap()
    }

    #[test]
    fn determinant_enforced() {
        assert!(IntegerMobius::new(1, 0, 0, 1).is_ok());
        assert!(IntegerMobius::new(2, 0, 0, 2).is_err());
        assert!(IntegerMobius::new(0, 1, 1, 0).is_err()); // determinant -1
        assert!(IntegerMobius::new(0, -1, 1, 0).is_ok());
    }

    #[test]
    fn projective_sign_canonical() {
        let a = IntegerMobius::new(1, 2, 0, 1).unwrap();
        let b = IntegerMobius::new(-1, -2, 0, -1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn action_on_vertices() {
        let t = IntegerMobius::translation(3);
        assert_eq!(t.apply(&r("1/2")), r("7/2"));
        assert_eq!(t.apply(&Rational::infinity()), Rational::infinity());
        let s = IntegerMobius::new(0, -1, 1, 0).unwrap(); // z -> -1/z
        assert_eq!(s.apply(&r("2")), r("-1/2"));
        assert_eq!(s.apply(&r("0")), Rational::infinity());
        assert_eq!(s.apply(&Rational::infinity()), r("0"));
    }

    #[test]
    fn compose_and_inverse() {
        let s = IntegerMobius::new(0, -1, 1, 0).unwrap();
        let t = IntegerMobius::translation(2);
        let st = s.compose(&t);
        assert_eq!(st.apply(&r("1")), s.apply(&t.apply(&r("1"))));
        assert_eq!(st.compose(&st.inverse()), IntegerMobius::identity());
    }

    #[test]
    fn base_partners_pinned() {
        assert_eq!(fan_base_partner(&Rational::infinity()), r("0"));
        assert_eq!(fan_base_partner(&r("0")), Rational::infinity());
        assert_eq!(fan_base_partner(&r("1")), r("0"));
        assert_eq!(fan_base_partner(&r("-1")), r("0"));
        assert_eq!(fan_base_partner(&r("1/2")), r("0"));
        assert_eq!(fan_base_partner(&r("3")), r("2"));
        assert_eq!(fan_base_partner(&r("-3")), r("-3").parents().unwrap().0);
    }

    #[test]
    fn chart_at_zero_is_negative_reciprocal() {
        // A(z) = -1/z: sends 0 to infinity and infinity (the partner) to 0.
        let a = to_infinity(&r("0"));
        assert_eq!(a, IntegerMobius::new(0, -1, 1, 0).unwrap());
        let chart = FanChart::new(&r("0"));
        assert_eq!(chart.index(&FareyEdge::base()).unwrap(), 0);
        assert_eq!(chart.index(&e("-1", "0")).unwrap(), 1);
        assert_eq!(chart.index(&e("0", "1")).unwrap(), -1);
        assert_eq!(chart.neighbour(2), r("-1/2"));
        assert_eq!(chart.neighbour(-3), r("1/3"));
    }

    #[test]
    fn chart_at_half_fixes_pinned_parent() {
        let a = to_infinity(&r("1/2"));
        assert_eq!(a.apply(&r("1/2")), Rational::infinity());
        assert_eq!(a.apply(&r("0")), r("0"));
        let chart = FanChart::new(&r("1/2"));
        // Neighbours of 1/2 include 0, 1, 1/3, 2/5, ...; indices must be
        // integers and consecutive edges share a triangle.
        for n in -4..=4 {
            let edge = chart.edge(n);
            assert_eq!(chart.index(&edge).unwrap(), n);
        }
    }

    #[test]
    fn fan_indices_increase_counterclockwise() {
        use crate::rational::in_ccw_arc;
        for v in ["0", "1/0", "1", "-1", "1/2", "2/3", "-5/3"] {
            let v = r(v);
            let chart = FanChart::new(&v);
            // Successive neighbours w_n, w_{n+1}: the triangle (v, w_n,
            // w_{n+1}) is positively oriented, i.e. w_{n+1} lies in the ccw
            // arc from w_n to v.
            for n in -3..3 {
                let w0 = chart.neighbour(n);
                let w1 = chart.neighbour(n + 1);
                assert!(
                    in_ccw_arc(&w1, &w0, &v),
                    "vertex {v}: neighbour {n}+1 not ccw after neighbour {n}"
                );
            }
        }
    }
}
