//! Shear and diamond-shear coordinate functions on the edges of the Farey
//! tessellation, the coordinate changes between them, and the class
//! diagnostics (balanced fans, square-summability, fan window sums,
//! quasisymmetry ratios) used to describe which functions come from
//! circle homeomorphisms.
//!
//! A coordinate function is a sparse real-valued map on edges (absent
//! entries are zero), tagged with its kind:
//!
//! * `shear`: the logarithm of the cross-ratio attached to a single edge;
//! * `diamond`: the coordinate attached to the two-triangle quadrilateral
//!   around an edge (dual edges are identified with edges throughout).
//!
//! Values are generic over [`CoordScalar`], instantiated at `f64` for
//! numeric work and at arbitrary-precision rationals ([`Rat`]) where the
//! conversions are exact: the change of coordinates in both directions
//! involves only additions and division by 4.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use farey_core::FareyEdge;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

mod classes;
mod error;
mod io;
mod ops;

pub use classes::{class_report, ClassReport, DiamondL2, ReportParams};
pub use error::CoordError;
pub use io::{read_coord_file, write_coord_file};
pub use ops::{
    check_finite_balanced, fan_partial_sums, fan_sums, h_identity_check, l2_norm,
    l2_norm_truncated, phi, phi_at, psi, qs_ratio, FanSums,
};

/// Exact rational scalar for coordinate arithmetic.
pub type Rat = BigRational;

/// Tolerance used when testing fan balance of `f64`-valued functions
/// (rational-valued functions are tested exactly).  Scaled by the fan's
/// total absolute value.
pub const BALANCE_TOL: f64 = 1e-12;

/// Scalar values a coordinate function can carry: `f64` or exact
/// rationals.  The operations are the ones the coordinate changes need —
/// ring operations, division by 4, and a lossy view as `f64` for reports.
pub trait CoordScalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Exact division by 4 (exact for both scalar types: binary floats
    /// divide exactly by powers of two).
    fn div4(self) -> Self;

    /// The square of the value.
    fn square(&self) -> Self;

    /// Absolute value.
    fn abs_val(&self) -> Self;

    /// Lossy conversion for reports and numeric comparisons.
    fn to_f64_lossy(&self) -> f64;

    /// True when the value is negligible relative to `scale` (exact zero
    /// for rationals; `BALANCE_TOL`-scaled for floats).
    fn is_negligible(&self, scale: &Self) -> bool;
}

impl CoordScalar for f64 {
    fn div4(self) -> Self {
        self / 4.0
    }

    fn square(&self) -> Self {
        self * self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        self.abs() <= BALANCE_TOL * scale.abs().max(1.0)
    }
}

impl CoordScalar for BigRational {
    fn div4(self) -> Self {
        self / BigRational::from_integer(BigInt::from(4))
    }

    fn square(&self) -> Self {
        self * self
    }

    fn abs_val(&self) -> Self {
        if self < &BigRational::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
}

/// The two coordinate kinds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoordKind {
    /// Per-edge shear (log cross-ratio of the edge's quadrilateral).
    Shear,
    /// Per-edge diamond shear (coordinate of the quadrilateral move).
    Diamond,
}

impl CoordKind {
    /// Lowercase name used in serialized files and error messages.
    pub fn name(self) -> &'static str {
        match self {
            CoordKind::Shear => "shear",
            CoordKind::Diamond => "diamond",
        }
    }
}

/// Evaluator backing a lazily defined coordinate function.
pub trait LazyCoord<T: CoordScalar>: Send + Sync {
    /// Value on a single edge.
    fn eval(&self, e: &FareyEdge) -> T;

    /// A finite superset of the support, when one is known.
    fn support_hint(&self) -> Option<Vec<FareyEdge>>;
}

/// A sparse coordinate function: finitely many stored entries (never
/// explicit zeros) plus an optional lazy evaluator consulted for edges
/// outside the stored map.  Immutable after construction; lazy values are
/// memoized behind a mutex, so concurrent queries are idempotent.
#[derive(Clone)]
pub struct CoordFn<T: CoordScalar = f64> {
    kind: CoordKind,
    entries: BTreeMap<FareyEdge, T>,
    lazy: Option<Arc<LazyCell<T>>>,
}

struct LazyCell<T: CoordScalar> {
    eval: Box<dyn LazyCoord<T>>,
    cache: Mutex<BTreeMap<FareyEdge, T>>,
}

impl<T: CoordScalar> CoordFn<T> {
    /// The zero function of the given kind.
    pub fn new(kind: CoordKind) -> Self {
        CoordFn { kind, entries: BTreeMap::new(), lazy: None }
    }

    /// Builds a finitely supported function; zero values are dropped.
    pub fn from_entries(kind: CoordKind, entries: impl IntoIterator<Item = (FareyEdge, T)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, v) in entries {
            if !v.is_zero() {
                map.insert(e, v);
            }
        }
        CoordFn { kind, entries: map, lazy: None }
    }

    /// Builds a lazily defined function (used for images of the
    /// shear-to-diamond change of coordinates).
    pub fn lazy(kind: CoordKind, eval: impl LazyCoord<T> + 'static) -> Self {
        CoordFn {
            kind,
            entries: BTreeMap::new(),
            lazy: Some(Arc::new(LazyCell {
                eval: Box::new(eval),
                cache: Mutex::new(BTreeMap::new()),
            })),
        }
    }

    /// The function's kind.
    pub fn kind(&self) -> CoordKind {
        self.kind
    }

    /// True when backed by a lazy evaluator (support not stored).
    pub fn is_lazy(&self) -> bool {
        self.lazy.is_some()
    }

    /// The value on an edge (zero when absent and no evaluator is set).
    pub fn value(&self, e: &FareyEdge) -> T {
        if let Some(v) = self.entries.get(e) {
            return v.clone();
        }
        if let Some(cell) = &self.lazy {
            let mut cache = cell.cache.lock().expect("lazy cache poisoned");
            if let Some(v) = cache.get(e) {
                return v.clone();
            }
            let v = cell.eval.eval(e);
            cache.insert(e.clone(), v.clone());
            return v;
        }
        T::zero()
    }

    /// Stored support (for lazy functions this is empty; see
    /// [`CoordFn::materialize`]).
    pub fn support(&self) -> impl Iterator<Item = (&FareyEdge, &T)> {
        self.entries.iter()
    }

    /// Number of stored entries.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// True when the function is identically zero and not lazy.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && self.lazy.is_none()
    }

    /// Converts a lazy function into a finitely supported one by
    /// evaluating it on its support hint.  Fails with
    /// [`CoordError::InfiniteSupport`] when no finite hint exists.
    pub fn materialize(&self) -> Result<CoordFn<T>, CoordError> {
        match &self.lazy {
            None => Ok(self.clone()),
            Some(cell) => {
                let hint = cell.eval.support_hint().ok_or(CoordError::InfiniteSupport)?;
                let entries = hint.into_iter().map(|e| {
                    let v = self.value(&e);
                    (e, v)
                });
                Ok(CoordFn::from_entries(self.kind, entries))
            }
        }
    }

    /// Applies a scalar map entrywise to the stored entries (finite
    /// functions only; zero results are dropped).
    pub fn map_values(&self, f: impl Fn(&T) -> T) -> CoordFn<T> {
        CoordFn::from_entries(self.kind, self.entries.iter().map(|(e, v)| (e.clone(), f(v))))
    }
}

impl CoordFn<Rat> {
    /// Exact-rational view of an `f64` function (every finite double is a
    /// dyadic rational, so this is lossless).
    pub fn from_f64_fn(f: &CoordFn<f64>) -> CoordFn<Rat> {
        CoordFn::from_entries(
            f.kind,
            f.entries.iter().map(|(e, v)| {
                (e.clone(), BigRational::from_float(*v).expect("finite coordinate values"))
            }),
        )
    }
}

impl CoordFn<f64> {
    /// Rounds an exact-rational function to `f64` entries.
    pub fn from_rat_fn(f: &CoordFn<Rat>) -> CoordFn<f64> {
        CoordFn::from_entries(
            f.kind,
            f.entries.iter().map(|(e, v)| (e.clone(), v.to_f64_lossy())),
        )
    }
}

impl<T: CoordScalar> std::fmt::Debug for CoordFn<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoordFn")
            .field("kind", &self.kind.name())
            .field("entries", &self.entries)
            .field("lazy", &self.lazy.is_some())
            .finish()
    }
}
