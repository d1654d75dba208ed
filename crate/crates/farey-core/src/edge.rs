//! Edges, triangles and diamonds (edge-adjacent triangle pairs) of the
//! Farey tessellation, together with the rooted combinatorics: mediants,
//! parent edges, generations and breadth-first enumeration.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::FareyError;
use crate::rational::{in_ccw_arc, Rational};

/// An unordered edge of the Farey tessellation, stored with endpoints in
/// extended-real order (`a < b`, infinity greatest).  Two vertices span an
/// edge exactly when `|p_a q_b - p_b q_a| = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FareyEdge {
    a: Rational,
    b: Rational,
}

/// Determinant `p_a q_b - p_b q_a` of a vertex pair.
fn det(a: &Rational, b: &Rational) -> BigInt {
    a.numer() * b.denom() - b.numer() * a.denom()
}

impl FareyEdge {
    /// Builds the edge `{a, b}`; fails unless the pair is unimodular.
    pub fn new(a: Rational, b: Rational) -> Result<Self, FareyError> {
        if a == b {
            return Err(FareyError::DegenerateEdge(a.to_string()));
        }
        if !det(&a, &b).magnitude().is_one() {
            return Err(FareyError::NotAnEdge(a.to_string(), b.to_string()));
        }
        Ok(if a < b { FareyEdge { a, b } } else { FareyEdge { a: b, b: a } })
    }

    /// The base edge `(0, infinity)`.
    pub fn base() -> Self {
        FareyEdge { a: Rational::zero(), b: Rational::infinity() }
    }

    /// True for the base edge `(0, infinity)`.
    pub fn is_base(&self) -> bool {
        self.b.is_infinity() && self.a.numer().is_zero()
    }

    /// Smaller endpoint in extended-real order.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Larger endpoint in extended-real order (infinity greatest).
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Both endpoints, smaller first.
    pub fn endpoints(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    /// True when `v` is one of the endpoints.
    pub fn contains(&self, v: &Rational) -> bool {
        &self.a == v || &self.b == v
    }

    /// The endpoint of `self` other than `v`, if `v` is an endpoint.
    pub fn other(&self, v: &Rational) -> Option<&Rational> {
        if &self.a == v {
            Some(&self.b)
        } else if &self.b == v {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Componentwise sum of the endpoints: the third vertex of the triangle
    /// on the far side of this edge from the base edge (for the base edge
    /// itself, the vertex `1`).  Infinity contributes `(sigma, 0)` with
    /// `sigma = +1` when the finite endpoint is `>= 0` and `-1` otherwise.
    pub fn mediant(&self) -> Rational {
        let (pa, qa, pb, qb) = self.signed_components();
        Rational::new(pa + pb, qa + qb).expect("mediant of an edge is a vertex")
    }

    /// Componentwise difference of the endpoints (same infinity convention
    /// as [`FareyEdge::mediant`], canonicalised): the third vertex of the
    /// triangle on the near side, and `-1` for the base edge.
    pub fn co_mediant(&self) -> Rational {
        let (pa, qa, pb, qb) = self.signed_components();
        Rational::new(pa - pb, qa - qb).expect("co-mediant of an edge is a vertex")
    }

    /// Endpoint components with infinity replaced by `(sigma, 0)`.
    fn signed_components(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        if self.b.is_infinity() {
            // The finite endpoint of an edge at infinity is an integer.
            let sigma = if self.a.numer().is_negative() { -BigInt::one() } else { BigInt::one() };
            (self.a.numer().clone(), self.a.denom().clone(), sigma, BigInt::zero())
        } else {
            (
                self.a.numer().clone(),
                self.a.denom().clone(),
                self.b.numer().clone(),
                self.b.denom().clone(),
            )
        }
    }

    /// The two triangle apexes adjacent to this edge, as an unordered pair.
    pub fn apexes(&self) -> (Rational, Rational) {
        (self.mediant(), self.co_mediant())
    }

    /// The quadrilateral of the two triangles adjacent to this edge, with
    /// this edge as its diagonal.  See [`FareyQuad`] for the orientation
    /// convention.
    pub fn quad(&self) -> FareyQuad {
        let m = self.mediant();
        let co = self.co_mediant();
        let (apex_b, apex_d) =
            if in_ccw_arc(&m, &self.a, &self.b) { (m, co) } else { (co, m) };
        FareyQuad { a: self.a.clone(), b: apex_b, c: self.b.clone(), d: apex_d }
    }

    /// The edge one step closer to the base edge in the dual tree, or
    /// `None` for the base edge itself.  The walk removes the younger
    /// endpoint (never infinity; otherwise the larger denominator, with the
    /// larger |numerator| breaking integer ties) and replaces it with the
    /// remaining parent of that endpoint.
    pub fn parent_edge(&self) -> Option<FareyEdge> {
        if self.is_base() {
            return None;
        }
        if self.b.is_infinity() {
            // (k, infinity) with k a nonzero integer steps toward 0.
            let k = self.a.numer();
            let step = if k.is_positive() { k - 1 } else { k + 1 };
            return Some(FareyEdge {
                a: Rational::integer(step),
                b: Rational::infinity(),
            });
        }
        let a_is_younger = match self.a.denom().cmp(self.b.denom()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                // Both integers; the tie only occurs at denominator 1.
                self.a.numer().magnitude() > self.b.numer().magnitude()
            }
        };
        let (young, old) = if a_is_younger { (&self.a, &self.b) } else { (&self.b, &self.a) };
        let c = Rational::new(
            young.numer() - old.numer(),
            young.denom() - old.denom(),
        )
        .expect("parent walk stays inside the tessellation");
        Some(FareyEdge::new(old.clone(), c).expect("parent walk produces edges"))
    }

    /// Distance to the base edge in the dual tree of the tessellation
    /// (base edge 0, its four triangle-mates 1, and so on).
    pub fn generation(&self) -> usize {
        let mut gen = 0;
        let mut e = self.clone();
        while let Some(parent) = e.parent_edge() {
            gen += 1;
            e = parent;
        }
        gen
    }

    /// The two edges of the next generation obtained by splitting the
    /// far-side triangle of this edge at its mediant.
    pub fn children(&self) -> [FareyEdge; 2] {
        let m = self.mediant();
        [
            FareyEdge::new(self.a.clone(), m.clone()).expect("mediant spans edges"),
            FareyEdge::new(m, self.b.clone()).expect("mediant spans edges"),
        ]
    }

    /// All edges grouped by generation, from generation 0 (the base edge)
    /// through `max_gen` inclusive.  Generation `n >= 1` holds `2^(n+1)`
    /// edges.
    pub fn by_generation(max_gen: usize) -> Vec<Vec<FareyEdge>> {
        let mut levels = vec![vec![FareyEdge::base()]];
        if max_gen == 0 {
            return levels;
        }
        // The base edge is the only edge whose both triangle-mates spawn
        // children; every later edge grows away from the base only.
        let base = FareyEdge::base();
        let (m, co) = base.apexes();
        let gen1 = vec![
            FareyEdge::new(base.a.clone(), m.clone()).unwrap(),
            FareyEdge::new(m, base.b.clone()).unwrap(),
            FareyEdge::new(base.a.clone(), co.clone()).unwrap(),
            FareyEdge::new(co, base.b.clone()).unwrap(),
        ];
        levels.push(gen1);
        for n in 2..=max_gen {
            let next: Vec<FareyEdge> =
                levels[n - 1].iter().flat_map(|e| e.children()).collect();
            levels.push(next);
        }
        levels
    }
}

impl std::fmt::Display for FareyEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// The two triangles adjacent to an edge, read counterclockwise around the
/// boundary circle as `(a, b, c, d)`:
///
/// * `(a, c)` is the shared diagonal with `a` the smaller endpoint,
/// * `b` is the apex inside the counterclockwise arc from `a` to `c`,
/// * `d` is the apex inside the counterclockwise arc from `c` to `a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FareyQuad {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl FareyQuad {
    /// Vertices in counterclockwise order `(a, b, c, d)`.
    pub fn vertices(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// The diagonal `(a, c)` shared by the two triangles.
    pub fn diagonal(&self) -> FareyEdge {
        FareyEdge::new(self.a.clone(), self.c.clone()).expect("diagonal is an edge")
    }

    /// Boundary sides in counterclockwise order:
    /// `(a,b), (b,c), (c,d), (d,a)`.
    pub fn sides(&self) -> [FareyEdge; 4] {
        let mk = |x: &Rational, y: &Rational| {
            FareyEdge::new(x.clone(), y.clone()).expect("quad sides are edges")
        };
        [mk(&self.a, &self.b), mk(&self.b, &self.c), mk(&self.c, &self.d), mk(&self.d, &self.a)]
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
    fn edge_validation() {
        assert!(FareyEdge::new(r("0"), r("1/2")).is_ok());
        assert!(FareyEdge::new(r("0"), r("2/3")).is_err());
        assert!(FareyEdge::new(r("1/2"), r("1/2")).is_err());
        assert!(FareyEdge::new(r("2"), Rational::infinity()).is_ok());
        assert!(FareyEdge::new(r("1/2"), Rational::infinity()).is_err());
    }

    #[test]
    fn mediants_with_infinity_convention() {
        assert_eq!(e("0", "1/0").mediant(), r("1"));
        assert_eq!(e("0", "1/0").co_mediant(), r("-1"));
        assert_eq!(e("2", "1/0").mediant(), r("3"));
        assert_eq!(e("2", "1/0").co_mediant(), r("1"));
        assert_eq!(e("-2", "1/0").mediant(), r("-3"));
        assert_eq!(e("-2", "1/0").co_mediant(), r("-1"));
        assert_eq!(e("0", "1").mediant(), r("1/2"));
        assert_eq!(e("0", "1").co_mediant(), Rational::infinity());
        assert_eq!(e("1/2", "1").mediant(), r("2/3"));
        assert_eq!(e("1/2", "1").co_mediant(), r("0"));
        assert_eq!(e("-1", "0").mediant(), r("-1/2"));
        assert_eq!(e("-1", "0").co_mediant(), Rational::infinity());
    }

    #[test]
    fn quads_are_counterclockwise() {
        // Base edge: ccw reading starts at 0, passes 1, infinity, -1.
        let q = FareyEdge::base().quad();
        let v: Vec<String> = q.vertices().iter().map(|x| x.to_string()).collect();
        assert_eq!(v, ["0/1", "1/1", "1/0", "-1/1"]);

        // (-1, infinity): apexes are -2 (beyond -1) and 0 (between).
        let q = e("-1", "1/0").quad();
        let v: Vec<String> = q.vertices().iter().map(|x| x.to_string()).collect();
        assert_eq!(v, ["-1/1", "0/1", "1/0", "-2/1"]);

        let q = e("1/2", "1").quad();
        let v: Vec<String> = q.vertices().iter().map(|x| x.to_string()).collect();
        assert_eq!(v, ["1/2", "2/3", "1/1", "0/1"]);
    }

    #[test]
    fn quad_apexes_lie_in_their_arcs() {
        // Counterclockwise reading: apex b inside the ccw arc a -> c and
        // apex d inside the ccw arc c -> a, checked with the exact cyclic
        // comparator rather than floating-point angles.
        for edge in FareyEdge::by_generation(5).concat() {
            let q = edge.quad();
            let [a, b, c, d] = q.vertices();
            assert!(in_ccw_arc(b, a, c), "{edge}: apex b");
            assert!(in_ccw_arc(d, c, a), "{edge}: apex d");
        }
    }

    #[test]
    fn parent_walk_and_generation() {
        assert_eq!(FareyEdge::base().parent_edge(), None);
        assert_eq!(e("0", "1").parent_edge(), Some(FareyEdge::base()));
        assert_eq!(e("-1", "0").parent_edge(), Some(FareyEdge::base()));
        assert_eq!(e("1", "1/0").parent_edge(), Some(FareyEdge::base()));
        assert_eq!(e("3", "1/0").parent_edge(), Some(e("2", "1/0")));
        assert_eq!(e("-2", "-1").parent_edge(), Some(e("-1", "1/0")));
        assert_eq!(e("1/2", "2/3").parent_edge(), Some(e("1/2", "1")));
        assert_eq!(e("1/2", "1").parent_edge(), Some(e("0", "1")));

        assert_eq!(FareyEdge::base().generation(), 0);
        assert_eq!(e("0", "1").generation(), 1);
        assert_eq!(e("1/2", "2/3").generation(), 3);
        assert_eq!(e("2/5", "3/7").generation(), 5);
    }

    #[test]
    fn generations_have_expected_counts() {
        let levels = FareyEdge::by_generation(8);
        assert_eq!(levels[0].len(), 1);
        for (n, level) in levels.iter().enumerate().skip(1) {
            assert_eq!(level.len(), 1 << (n + 1), "generation {n}");
            for edge in level {
                assert_eq!(edge.generation(), n, "{edge}");
            }
        }
        // No duplicates across the whole enumeration.
        let all: std::collections::HashSet<_> = levels.concat().into_iter().collect();
        assert_eq!(all.len(), 1 + (2..=9).map(|k| 1usize << k).sum::<usize>());
    }

    #[test]
    fn children_invert_parent() {
        for edge in FareyEdge::by_generation(6).concat() {
            for child in edge.children() {
                assert_eq!(child.parent_edge().as_ref(), Some(&edge), "{edge} -> {child}");
            }
        }
    }
}
