//! The coordinate changes between shear and diamond-shear functions, fan
//! partial sums, balance checking, the square-sum identity relating the
//! two coordinate systems, and the quasisymmetry ratio.

use std::collections::{BTreeMap, BTreeSet};

use farey_core::{FanChart, FareyEdge, Rational};

use crate::{CoordError, CoordFn, CoordKind, CoordScalar, LazyCoord};

fn require_kind<T: CoordScalar>(
    f: &CoordFn<T>,
    expected: CoordKind,
) -> Result<(), CoordError> {
    if f.kind() != expected {
        return Err(CoordError::KindMismatch {
            expected: expected.name(),
            got: f.kind().name(),
        });
    }
    Ok(())
}

fn require_finite<T: CoordScalar>(f: &CoordFn<T>) -> Result<(), CoordError> {
    if f.is_lazy() {
        return Err(CoordError::NotInP);
    }
    Ok(())
}

/// Diamond-to-shear change of coordinates on a single edge:
/// with the quadrilateral of `e` read counterclockwise as `(a, b, c, d)`
/// and sides `e1 = (a,b), e2 = (b,c), e3 = (c,d), e4 = (d,a)`,
///
/// ```text
/// s(e) = -theta(e1) + theta(e2) - theta(e3) + theta(e4)
/// ```
///
/// The value is unchanged under the half-turn `(a,b,c,d) -> (c,d,a,b)`,
/// so the orientation of `e` is irrelevant.
pub fn phi_at<T: CoordScalar>(theta: &CoordFn<T>, e: &FareyEdge) -> T {
    let [e1, e2, e3, e4] = e.quad().sides();
    (theta.value(&e2) + theta.value(&e4)) - (theta.value(&e1) + theta.value(&e3))
}

/// Diamond-to-shear change of coordinates.  Finite support maps to finite
/// support: the image is carried by the triangle-mates of the input's
/// support edges.
pub fn phi<T: CoordScalar>(theta: &CoordFn<T>) -> Result<CoordFn<T>, CoordError> {
    require_kind(theta, CoordKind::Diamond)?;
    require_finite(theta)?;
    let mut candidates: BTreeSet<FareyEdge> = BTreeSet::new();
    for (f, _) in theta.support() {
        // Edges whose quadrilateral touches f = edges sharing a triangle
        // with f = the sides of f's own quadrilateral.
        for mate in f.quad().sides() {
            candidates.insert(mate);
        }
    }
    Ok(CoordFn::from_entries(
        CoordKind::Shear,
        candidates.into_iter().map(|e| {
            let v = phi_at(theta, &e);
            (e, v)
        }),
    ))
}

/// Per-vertex view of a finite shear function: the fan chart at the vertex
/// and the support values sorted by fan index.
struct FanView<T> {
    chart: FanChart,
    entries: Vec<(i64, T)>,
}

impl<T: CoordScalar> FanView<T> {
    fn total(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, (_, v)| acc + v.clone())
    }

    fn abs_total(&self) -> T {
        self.entries.iter().fold(T::zero(), |acc, (_, v)| acc + v.abs_val())
    }

    fn is_balanced(&self) -> bool {
        self.total().is_negligible(&self.abs_total())
    }

    /// Sums strictly above / strictly below the given fan index.
    fn sums_around(&self, idx: i64) -> (T, T) {
        let mut above = T::zero();
        let mut below = T::zero();
        for (j, v) in &self.entries {
            if *j > idx {
                above = above + v.clone();
            } else if *j < idx {
                below = below + v.clone();
            }
        }
        (above, below)
    }

    fn index_range(&self) -> Option<(i64, i64)> {
        let lo = self.entries.first()?.0;
        let hi = self.entries.last()?.0;
        Some((lo, hi))
    }
}

/// Builds the per-vertex fan views of a finite function's support.
fn fan_views<T: CoordScalar>(s: &CoordFn<T>) -> BTreeMap<Rational, FanView<T>> {
    let mut views: BTreeMap<Rational, FanView<T>> = BTreeMap::new();
    for (e, v) in s.support() {
        for vertex in [e.a(), e.b()] {
            let view = views.entry(vertex.clone()).or_insert_with(|| FanView {
                chart: FanChart::new(vertex),
                entries: Vec::new(),
            });
            let idx = view.chart.index(e).expect("support edge lies in its endpoint's fan");
            view.entries.push((idx, v.clone()));
        }
    }
    for view in views.values_mut() {
        view.entries.sort_by_key(|(idx, _)| *idx);
    }
    views
}

/// Lazy shear-to-diamond image.  Evaluation of an edge touches only the
/// support entries in the fans at its two endpoints.
struct PsiImage<T: CoordScalar> {
    fans: BTreeMap<Rational, FanView<T>>,
    balanced: bool,
}

impl<T: CoordScalar> LazyCoord<T> for PsiImage<T> {
    fn eval(&self, e: &FareyEdge) -> T {
        let mut acc = T::zero();
        for vertex in [e.a(), e.b()] {
            if let Some(view) = self.fans.get(vertex) {
                let idx = view.chart.index(e).expect("edge lies in its endpoint's fan");
                let (above, below) = view.sums_around(idx);
                acc = acc + (below - above);
            }
        }
        acc.div4()
    }

    /// For balanced input the image is supported inside the support
    /// windows of the fans; outside them both half-fan sums are zero.
    fn support_hint(&self) -> Option<Vec<FareyEdge>> {
        if !self.balanced {
            return None;
        }
        let mut edges = BTreeSet::new();
        for view in self.fans.values() {
            if let Some((lo, hi)) = view.index_range() {
                for idx in lo..=hi {
                    edges.insert(view.chart.edge(idx));
                }
            }
        }
        Some(edges.into_iter().collect())
    }
}

/// Shear-to-diamond change of coordinates.  For an edge `e = (a, b)` the
/// value is
///
/// ```text
/// psi(s)(e) = 1/4 (p_{s,a}(e-) - p_{s,a}(e+) + p_{s,b}(e-) - p_{s,b}(e+))
/// ```
///
/// where `p_{s,v}(e+)` / `p_{s,v}(e-)` sum `s` over the fan edges at `v`
/// strictly above / below `e`.  The result is returned lazily: values are
/// computed on demand (and memoized), since the image of an unbalanced
/// function has infinite support.  For balanced input,
/// [`CoordFn::materialize`] produces the exact finite form.
pub fn psi<T: CoordScalar>(s: &CoordFn<T>) -> Result<CoordFn<T>, CoordError> {
    require_kind(s, CoordKind::Shear)?;
    require_finite(s)?;
    let fans = fan_views(s);
    let balanced = fans.values().all(FanView::is_balanced);
    Ok(CoordFn::lazy(CoordKind::Diamond, PsiImage { fans, balanced }))
}

/// Fan partial sums of a finite function at a vertex: the pair
/// `(p_plus, p_minus)` of sums strictly above and strictly below `e` in
/// the fan order at `v`.
pub fn fan_partial_sums<T: CoordScalar>(
    s: &CoordFn<T>,
    v: &Rational,
    e: &FareyEdge,
) -> Result<(T, T), CoordError> {
    require_finite(s)?;
    let chart = FanChart::new(v);
    let idx = chart.index(e)?;
    let mut above = T::zero();
    let mut below = T::zero();
    for (f, val) in s.support() {
        if !f.contains(v) {
            continue;
        }
        let j = chart.index(f).expect("support edge lies in the fan");
        if j > idx {
            above = above + val.clone();
        } else if j < idx {
            below = below + val.clone();
        }
    }
    Ok((above, below))
}

/// Materialized fan partial sums at a vertex over the support window
/// (one edge of margin on each side).
#[derive(Clone, Debug)]
pub struct FanSums<T: CoordScalar = f64> {
    vertex: Rational,
    sums: BTreeMap<FareyEdge, (T, T)>,
}

impl<T: CoordScalar> FanSums<T> {
    /// The fan's vertex.
    pub fn vertex(&self) -> &Rational {
        &self.vertex
    }

    /// The `(p_plus, p_minus)` pair stored for an edge, if within the
    /// materialized window.
    pub fn get(&self, e: &FareyEdge) -> Option<&(T, T)> {
        self.sums.get(e)
    }

    /// All stored `(edge, (p_plus, p_minus))` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&FareyEdge, &(T, T))> {
        self.sums.iter()
    }
}

/// Computes [`FanSums`] for a finite function at a vertex.
pub fn fan_sums<T: CoordScalar>(
    s: &CoordFn<T>,
    v: &Rational,
) -> Result<FanSums<T>, CoordError> {
    require_finite(s)?;
    let views = fan_views(s);
    let mut sums = BTreeMap::new();
    if let Some(view) = views.get(v) {
        if let Some((lo, hi)) = view.index_range() {
            for idx in (lo - 1)..=(hi + 1) {
                let e = view.chart.edge(idx);
                let (above, below) = view.sums_around(idx);
                sums.insert(e, (above, below));
            }
        }
    }
    Ok(FanSums { vertex: v.clone(), sums })
}

/// True when every vertex fan of the finite function sums to zero
/// (exactly for rational values, within [`crate::BALANCE_TOL`] relative
/// to the fan's absolute mass for floats).
pub fn check_finite_balanced<T: CoordScalar>(s: &CoordFn<T>) -> Result<bool, CoordError> {
    require_finite(s)?;
    Ok(fan_views(s).values().all(FanView::is_balanced))
}

/// Both sides of the square-sum identity tying a finite diamond function
/// `theta` to its shear image `s`:
///
/// * left: `sum_v sum_e p_{s,v}(e+)^2` over all vertices and fan edges
///   (finitely many nonzero terms since `s` is balanced);
/// * right: `2 sum_e theta(e)^2 + sum_{e ~ e'} (theta(e) - theta(e'))^2`,
///   the last sum over unordered pairs of edges sharing a triangle.
///
/// The two sides agree exactly in rational arithmetic.
pub fn h_identity_check<T: CoordScalar>(theta: &CoordFn<T>) -> Result<(T, T), CoordError> {
    require_kind(theta, CoordKind::Diamond)?;
    require_finite(theta)?;
    let s = phi(theta)?;

    // Left side: per-vertex upper partial sums.  Within a fan, p_plus is
    // nonzero only between the lowest and highest support indices; walk
    // that integer window accumulating the suffix sums.
    let mut lhs = T::zero();
    for view in fan_views(&s).values() {
        let (lo, hi) = view.index_range().expect("views only exist for support vertices");
        let mut suffix = T::zero(); // sum over indices > i, starting at i = hi
        let mut entry = view.entries.len();
        for i in (lo..hi).rev() {
            // Move entries with index > i into the suffix.
            while entry > 0 && view.entries[entry - 1].0 > i {
                entry -= 1;
                suffix = suffix + view.entries[entry].1.clone();
            }
            lhs = lhs + suffix.square();
        }
    }

    // Right side: edge squares plus squared differences across triangles.
    let mut rhs = T::zero();
    for (_, v) in theta.support() {
        rhs = rhs + v.square() + v.square();
    }
    let mut triangles: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for (e, _) in theta.support() {
        let (m, co) = e.apexes();
        for apex in [m, co] {
            let mut key = vec![e.a().clone(), e.b().clone(), apex];
            key.sort();
            triangles.insert(key);
        }
    }
    for tri in &triangles {
        let sides = [
            FareyEdge::new(tri[0].clone(), tri[1].clone()).expect("triangle side"),
            FareyEdge::new(tri[0].clone(), tri[2].clone()).expect("triangle side"),
            FareyEdge::new(tri[1].clone(), tri[2].clone()).expect("triangle side"),
        ];
        for i in 0..3 {
            for j in (i + 1)..3 {
                let d = theta.value(&sides[i]) - theta.value(&sides[j]);
                rhs = rhs + d.square();
            }
        }
    }
    Ok((lhs, rhs))
}

/// The quasisymmetry ratio of a finite shear function at vertex `v`,
/// window start `k`, window length `n`:
///
/// ```text
///            e^{s(e_k)} + e^{s(e_k)+s(e_{k+1})} + ... + e^{s(e_k)+...+s(e_{k+n})}
/// s(k,n;v) = ----------------------------------------------------------------
///            1 + e^{-s(e_{k-1})} + ... + e^{-s(e_{k-1})-...-s(e_{k-n})}
/// ```
///
/// A function comes from a quasisymmetric homeomorphism exactly when these
/// ratios are bounded between `1/C` and `C` over all `(v, k, n)`.
pub fn qs_ratio<T: CoordScalar>(
    s: &CoordFn<T>,
    v: &Rational,
    k: i64,
    n: usize,
) -> Result<f64, CoordError> {
    require_kind(s, CoordKind::Shear)?;
    require_finite(s)?;
    let chart = FanChart::new(v);
    let sval = |i: i64| s.value(&chart.edge(i)).to_f64_lossy();

    let mut num = 0.0;
    let mut partial = 0.0;
    for j in 0..=(n as i64) {
        partial += sval(k + j);
        num += partial.exp();
    }
    let mut den = 1.0;
    let mut partial = 0.0;
    for j in 1..=(n as i64) {
        partial -= sval(k - j);
        den += partial.exp();
    }
    Ok(num / den)
}

/// Sum of squared values over the stored support, as `f64`.
pub fn l2_norm<T: CoordScalar>(f: &CoordFn<T>) -> Result<f64, CoordError> {
    require_finite(f)?;
    let total = f.support().fold(T::zero(), |acc, (_, v)| acc + v.square());
    Ok(total.to_f64_lossy())
}

/// Sum of squared values over all edges of generation at most `max_gen`;
/// usable for lazily defined functions (truncation semantics).
pub fn l2_norm_truncated<T: CoordScalar>(f: &CoordFn<T>, max_gen: usize) -> f64 {
    let mut total = T::zero();
    for level in FareyEdge::by_generation(max_gen) {
        for e in level {
            total = total + f.value(&e).square();
        }
    }
    total.to_f64_lossy()
}
