//! Per-cell gap data.
//!
//! Fix a vertex `v` of the tessellation.  In the fan chart at `v` the cell is
//! the region above the scalloped boundary [`crate::boundary_u`], and the fan
//! neighbours of `v` sit at the integers.  A balanced shear function `s`
//! prescribes how far apart the images of those neighbours end up: the
//! normalized *gap sequence*
//!
//! ```text
//! λ_n = exp( Σ_{i ≤ n} s(e_i) )        (e_i = fan edge with index i)
//! ```
//!
//! gives the image spacing `φ(n+1) − φ(n)`, with `φ(0) = 0`.  Because `s` is
//! balanced at `v` and finitely supported, `λ_n = 1` exactly outside the
//! support window — both the empty partial sum below and the full (zero) sum
//! above are exact — so only finitely many strips carry any Beltrami energy.
//! The strip over `[n − 1/2, n + 1/2]` sees the gap pair `(λ_{n−1}, λ_n)`.

use std::collections::BTreeMap;

use coords::{CoordError, CoordFn, CoordKind, BALANCE_TOL};
use farey_core::{fan_base_edge, FanChart, Rational};

use crate::error::QcError;
use crate::quad::KahanSum;
use crate::strip::StripGeom;

/// Generation of a vertex's cell in the dual tree: the edge-generation of
/// the fan base edge at that vertex.  The cells at `∞` and `0` have
/// generation 0, at `±1` generation 1, and each tessellation level adds one.
pub fn cell_generation(v: &Rational) -> usize {
    fan_base_edge(v).generation()
}

/// Gap data of one cell: the fan chart at the vertex, the normalized gap
/// sequence over its finite support window, and the log-scale `m = Σ_{i≥0}
/// s(e_i)` that aligns the gap ladder with the three-point normalization of
/// the image frame.
#[derive(Debug, Clone)]
pub struct CellAtlas {
    vertex: Rational,
    chart: FanChart,
    /// `λ_n` for `n` in the gap window `[lo, hi−1]`; exactly `1.0` elsewhere.
    gaps: BTreeMap<i64, f64>,
    /// Strip indices that can differ from the identity: `[lo, hi]`, where
    /// `lo`/`hi` are the extreme support fan indices.  `None` when the shear
    /// does not touch this fan at all.
    window: Option<(i64, i64)>,
    log_tail: f64,
}

impl CellAtlas {
    /// Builds the atlas of `s` at `v`.  Requires a shear-kind function;
    /// lazily defined input is materialized first.  Fails with
    /// [`QcError::NotBalanced`] when the fan sum at `v` exceeds
    /// [`coords::BALANCE_TOL`] relative to the fan's absolute mass.
    pub fn new(s: &CoordFn<f64>, v: &Rational) -> Result<Self, QcError> {
        if s.kind() != CoordKind::Shear {
            return Err(QcError::Coord(CoordError::KindMismatch {
                expected: CoordKind::Shear.name(),
                got: s.kind().name(),
            }));
        }
        let owned;
        let s = if s.is_lazy() {
            owned = s.materialize()?;
            &owned
        } else {
            s
        };
        let chart = FanChart::new(v);
        let mut entries: BTreeMap<i64, f64> = BTreeMap::new();
        for (e, &value) in s.support() {
            if value != 0.0 && e.contains(v) {
                let idx = chart.index(e).expect("support edge lies in the fan of v");
                entries.insert(idx, value);
            }
        }
        if entries.is_empty() {
            return Ok(CellAtlas {
                vertex: v.clone(),
                chart,
                gaps: BTreeMap::new(),
                window: None,
                log_tail: 0.0,
            });
        }
        let residue: f64 = entries.values().sum();
        let mass: f64 = entries.values().map(|x| x.abs()).sum();
        if residue.abs() > BALANCE_TOL * mass.max(1.0) {
            return Err(QcError::NotBalanced {
                vertex: v.to_string(),
                residue,
            });
        }
        let lo = *entries.keys().next().expect("nonempty");
        let hi = *entries.keys().next_back().expect("nonempty");
        // Cumulative log-gaps over [lo, hi-1]; the residue that would land on
        // index hi is below BALANCE_TOL and is dropped so the window is sharp.
        let mut gaps = BTreeMap::new();
        let mut cum = 0.0;
        for n in lo..hi {
            if let Some(&value) = entries.get(&n) {
                cum += value;
            }
            gaps.insert(n, cum.exp());
        }
        let log_tail = entries.range(0..).map(|(_, &value)| value).sum();
        Ok(CellAtlas {
            vertex: v.clone(),
            chart,
            gaps,
            window: Some((lo, hi)),
            log_tail,
        })
    }

    pub fn vertex(&self) -> &Rational {
        &self.vertex
    }

    pub fn chart(&self) -> &FanChart {
        &self.chart
    }

    /// Gap `λ_n`; exactly `1.0` outside the finite window.
    pub fn gap(&self, n: i64) -> f64 {
        self.gaps.get(&n).copied().unwrap_or(1.0)
    }

    /// Strip indices that may carry Beltrami energy, or `None` when the cell
    /// is untouched.  Strips outside this range are exactly the identity.
    pub fn active_strips(&self) -> Option<(i64, i64)> {
        self.window
    }

    /// The strip over `[n − 1/2, n + 1/2]` with its gap pair.
    pub fn strip(&self, n: i64) -> Result<StripGeom, QcError> {
        StripGeom::new(self.gap(n - 1), self.gap(n))
    }

    /// Image position `φ(n)` of fan neighbour `n`: `φ(0) = 0` and
    /// `φ(n+1) − φ(n) = λ_n`.  Outside the window the ladder continues with
    /// unit steps, so only stored gaps are summed.
    pub fn boundary_position(&self, n: i64) -> f64 {
        let correction: f64 = if n >= 0 {
            self.gaps.range(0..n).map(|(_, g)| g - 1.0).sum()
        } else {
            -self.gaps.range(n..0).map(|(_, g)| g - 1.0).sum::<f64>()
        };
        n as f64 + correction
    }

    /// `m = Σ_{i ≥ 0} s(e_i)`: the image frame pins neighbour 0 at `0` and
    /// neighbour `−1` at `−1`, so the gap ladder must be rescaled by `e^m`
    /// (making `λ_{−1} · e^m = 1`) before mapping back through it.
    pub fn log_tail(&self) -> f64 {
        self.log_tail
    }

    /// True when the shear does not move this cell's boundary at all.
    pub fn is_identity(&self) -> bool {
        self.window.is_none()
    }
}

/// Reduced Beltrami energy of the cell over strips `|n| ≤ window`:
/// `Σ_n ∫ |μ_n(x)|²/u(x) dx`.  Strips outside the active range contribute
/// exactly zero, so any window covering it gives the cell's full energy.
pub fn cell_l2(atlas: &CellAtlas, window: i64) -> f64 {
    let Some((lo, hi)) = atlas.active_strips() else {
        return 0.0;
    };
    let mut acc = KahanSum::default();
    for n in lo.max(-window)..=hi.min(window) {
        let strip = atlas
            .strip(n)
            .expect("gaps from a balanced atlas are positive");
        acc.add(strip.l2());
    }
    acc.total()
}

/// Supremum of `|μ|` over the cell's strips.
pub fn cell_sup(atlas: &CellAtlas) -> f64 {
    let Some((lo, hi)) = atlas.active_strips() else {
        return 0.0;
    };
    let mut sup = 0.0_f64;
    for n in lo..=hi {
        let strip = atlas
            .strip(n)
            .expect("gaps from a balanced atlas are positive");
        sup = sup.max(strip.sup_mu());
    }
    sup
}
