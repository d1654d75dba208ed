//! The assembled extension of a developed circle homeomorphism, and its
//! global Beltrami estimate.
//!
//! Every cell of the dual-tree decomposition is conjugated to the normalized
//! half-plane frame, where the shear data reduces to the cell's gap ladder
//! (see [`CellAtlas`]).  Inside the frame the cell is repositioned strip by
//! strip with the closed-form stretch, translated vertically so points move
//! with their boundary scallop; the result is rescaled to match the image
//! frame's three-point normalization and mapped back to the disk.  Cells
//! touch the unit circle only at their own vertex, so the assembled map
//! restricts on vertices to the developed boundary homeomorphism.
//!
//! The Beltrami energy of the whole extension decomposes exactly over the
//! finitely many cells the shear touches — untouched cells are conformal —
//! and within each cell over its active strips, giving [`extension_l2`] an
//! exact finite influence region rather than a truncation error.

use std::collections::BTreeSet;

use coords::psi;
use coords::{CoordError, CoordFn, CoordKind, BALANCE_TOL};
use develop::{develop_diamond, CircleMap, PiecewiseMobiusHomeo};
use farey_core::{cayley, fan_base_partner, FanChart, FareyEdge, Rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::FromPrimitive;

use crate::atlas::{cell_generation, CellAtlas};
use crate::error::QcError;
use crate::plane::PlaneMobius;
use crate::quad::KahanSum;
use crate::strip::boundary_u;
use crate::LOCATE_MAX_STEPS;

/// Beltrami data of one strip of one cell.
#[derive(Debug, Clone)]
pub struct StripEstimate {
    /// Strip index in the cell's fan chart.
    pub index: i64,
    /// Left gap of the strip.
    pub rho: f64,
    /// Right gap of the strip.
    pub lambda: f64,
    /// Reduced hyperbolic energy `∫ |μ|²/u dx` of the strip.
    pub l2: f64,
    /// Supremum of `|μ|` over the strip.
    pub sup: f64,
}

/// Beltrami data of one cell: total energy, supremum, and the per-strip
/// breakdown over its active window.
#[derive(Debug, Clone)]
pub struct CellEstimate {
    pub vertex: Rational,
    /// Dual-tree generation of the cell.
    pub generation: usize,
    pub l2: f64,
    pub sup: f64,
    pub strips: Vec<StripEstimate>,
}

/// Global Beltrami estimate of the extension of a finite balanced shear.
#[derive(Debug, Clone)]
pub struct BeltramiEstimate {
    /// Supremum of `|μ|` over the disk; always `< 1`.
    pub sup_mu: f64,
    /// Total hyperbolic energy `∫∫ |μ|² dA_hyp` (half-plane normalization
    /// `dx dy / y²`), summed exactly over the touched cells.
    pub l2_hyp: f64,
    /// Generation cutoff the cell list was restricted to.
    pub max_gen: usize,
    /// Per-cell breakdown, one entry per touched cell within the cutoff.
    pub cells: Vec<CellEstimate>,
}

/// Validates that `s` is a finite shear function balanced at every support
/// vertex, returning an owned materialized copy.
fn require_balanced_shear(s: &CoordFn<f64>) -> Result<CoordFn<f64>, QcError> {
    if s.kind() != CoordKind::Shear {
        return Err(QcError::Coord(CoordError::KindMismatch {
            expected: CoordKind::Shear.name(),
            got: s.kind().name(),
        }));
    }
    let owned = s.materialize()?;
    for v in support_vertices(&owned) {
        let mut residue = 0.0;
        let mut mass = 0.0;
        for (e, &value) in owned.support() {
            if e.contains(&v) {
                residue += value;
                mass += value.abs();
            }
        }
        if residue.abs() > BALANCE_TOL * mass.max(1.0) {
            return Err(QcError::NotBalanced {
                vertex: v.to_string(),
                residue,
            });
        }
    }
    Ok(owned)
}

fn support_vertices(s: &CoordFn<f64>) -> BTreeSet<Rational> {
    let mut vertices = BTreeSet::new();
    for (e, &value) in s.support() {
        if value != 0.0 {
            vertices.insert(e.a().clone());
            vertices.insert(e.b().clone());
        }
    }
    vertices
}

/// Computes the Beltrami estimate of the extension of `s`, summing the
/// reduced strip energies over every touched cell of generation at most
/// `max_gen`.  The decomposition is exact: vertices outside the shear's
/// support have conformal cells, so the cell list *is* the influence region
/// and raising `max_gen` beyond the support depth changes nothing.
///
/// The zero shear yields zero energy and an empty cell list.
pub fn extension_l2(s: &CoordFn<f64>, max_gen: usize) -> Result<BeltramiEstimate, QcError> {
    let shear = require_balanced_shear(s)?;
    let mut cells = Vec::new();
    let mut total = KahanSum::default();
    let mut sup_mu = 0.0_f64;
    for v in support_vertices(&shear) {
        let generation = cell_generation(&v);
        if generation > max_gen {
            continue;
        }
        let atlas = CellAtlas::new(&shear, &v)?;
        let Some((lo, hi)) = atlas.active_strips() else {
            continue;
        };
        let mut cell_total = KahanSum::default();
        let mut cell_sup = 0.0_f64;
        let mut strips = Vec::new();
        for n in lo..=hi {
            let geom = atlas.strip(n).expect("atlas gaps validated at construction");
            if geom.is_identity() {
                continue;
            }
            let l2 = geom.l2();
            let sup = geom.sup_mu();
            cell_total.add(l2);
            cell_sup = cell_sup.max(sup);
            strips.push(StripEstimate {
                index: n,
                rho: geom.rho(),
                lambda: geom.lambda(),
                l2,
                sup,
            });
        }
        total.add(cell_total.total());
        sup_mu = sup_mu.max(cell_sup);
        cells.push(CellEstimate {
            vertex: v,
            generation,
            l2: cell_total.total(),
            sup: cell_sup,
            strips,
        });
    }
    Ok(BeltramiEstimate {
        sup_mu,
        l2_hyp: total.total(),
        max_gen,
        cells,
    })
}

/// Frame of one cell at `v`: the disk→half-plane chart pinning
/// `(v, partner, neighbour₋₁) ↦ (∞, 0, −1)` by circle points, the same
/// normalization of the *image* cell by developed vertex images, and the
/// cell's gap atlas in between.
pub struct CellFrame {
    atlas: CellAtlas,
    domain: PlaneMobius,
    image_inv: PlaneMobius,
    scale: f64,
}

impl CellFrame {
    /// Builds the frame of the cell at `v` for shear `s` whose developed
    /// boundary map is `boundary`.
    pub fn new(
        s: &CoordFn<f64>,
        boundary: &PiecewiseMobiusHomeo,
        v: &Rational,
    ) -> Result<Self, QcError> {
        let atlas = CellAtlas::new(s, v)?;
        let partner = fan_base_partner(v);
        let below = atlas.chart().neighbour(-1);
        let domain = PlaneMobius::normalized_frame(
            v.unit_point(),
            partner.unit_point(),
            below.unit_point(),
        )?;
        let image = PlaneMobius::normalized_frame(
            boundary.vertex_image(v),
            boundary.vertex_image(&partner),
            boundary.vertex_image(&below),
        )?;
        Ok(CellFrame {
            scale: atlas.log_tail().exp(),
            atlas,
            domain,
            image_inv: image.inverse(),
        })
    }

    pub fn atlas(&self) -> &CellAtlas {
        &self.atlas
    }

    /// The chart conjugating the cell in the disk to the normalized frame.
    pub fn domain_chart(&self) -> &PlaneMobius {
        &self.domain
    }

    /// Applies the cell's extension to a disk point located in this cell:
    /// chart in, reposition by the strip stretches, rescale to the image
    /// normalization, chart back out.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = self.domain.apply(z);
        let moved = reposition(&self.atlas, w);
        self.image_inv.apply(self.scale * moved)
    }
}

/// Moves a point of the normalized cell by the strip stretches: horizontal
/// position follows the gap ladder's stretch `α`, and the vertical offset
/// keeps the point's height above its own scallop (`β − u + y`).  Outside
/// the active window this is exactly a horizontal translation.
fn reposition(atlas: &CellAtlas, w: Complex64) -> Complex64 {
    let Some((lo, hi)) = atlas.active_strips() else {
        return w;
    };
    let nearest = w.re.round();
    if nearest < lo as f64 {
        return w + (atlas.boundary_position(lo) - lo as f64);
    }
    if nearest > hi as f64 {
        return w + (atlas.boundary_position(hi) - hi as f64);
    }
    let n = nearest as i64;
    let t = w.re - nearest;
    let geom = atlas.strip(n).expect("atlas gaps validated at construction");
    let st = geom.stretch(t);
    let u0 = (1.0 - t * t).sqrt();
    Complex64::new(
        atlas.boundary_position(n) + st.alpha,
        st.beta - u0 + w.im,
    )
}

/// The extension of one shear function: develops the boundary homeomorphism
/// once, then maps disk points cell by cell.
pub struct QcExtension {
    shear: CoordFn<f64>,
    boundary: PiecewiseMobiusHomeo,
}

impl QcExtension {
    /// Develops the boundary homeomorphism of the finite balanced shear `s`.
    pub fn new(s: &CoordFn<f64>) -> Result<Self, QcError> {
        let shear = require_balanced_shear(s)?;
        let theta = psi(&shear)?.materialize()?;
        let boundary = develop_diamond(&theta)?;
        Ok(QcExtension { shear, boundary })
    }

    /// The developed boundary homeomorphism the extension restricts to.
    pub fn boundary(&self) -> &PiecewiseMobiusHomeo {
        &self.boundary
    }

    /// Frame of the cell at `v`.
    pub fn frame(&self, v: &Rational) -> Result<CellFrame, QcError> {
        CellFrame::new(&self.shear, &self.boundary, v)
    }

    /// Evaluates the extension at a point of the open unit disk.
    pub fn map(&self, z: Complex64) -> Result<Complex64, QcError> {
        let v = locate_cell(z)?;
        Ok(self.frame(&v)?.apply(z))
    }
}

/// Extends the finite balanced shear `s` and evaluates the extension at `z`.
/// For many evaluations of the same shear build one [`QcExtension`] instead,
/// so the boundary map is developed only once.
pub fn extension_map(s: &CoordFn<f64>, z: Complex64) -> Result<Complex64, QcError> {
    QcExtension::new(s)?.map(z)
}

/// Signed containment margin of `z` in the cell at `v`: the height of the
/// chart image above the cell's scalloped boundary.
fn cell_margin(v: &Rational, z: Complex64) -> Result<f64, QcError> {
    let partner = fan_base_partner(v);
    let below = FanChart::new(v).neighbour(-1);
    let frame = PlaneMobius::normalized_frame(
        v.unit_point(),
        partner.unit_point(),
        below.unit_point(),
    )?;
    let w = frame.apply(z);
    Ok(w.im - boundary_u(w.re))
}

fn in_half_disk(x1: f64, x2: f64, w: Complex64) -> bool {
    let center = 0.5 * (x1 + x2);
    let radius = 0.5 * (x2 - x1).abs();
    (w - Complex64::new(center, 0.0)).norm_sqr() < radius * radius
}

/// Finds the vertex whose cell contains `z`, walking down the dual tree:
/// start from the column of the half-plane chart, then descend through
/// mediant triangles while the point sits below the current cells.  On the
/// measure-zero set where cells meet, any incident cell is correct (the
/// extension is continuous across cell boundaries); the largest containment
/// margin decides.
pub fn locate_cell(z: Complex64) -> Result<Rational, QcError> {
    let modulus = z.norm();
    if !(modulus < 1.0) {
        return Err(QcError::OutsideDisk { modulus });
    }
    let w = cayley(z);
    if w.im >= boundary_u(w.re) {
        return Ok(Rational::infinity());
    }
    let floor = w.re.floor();
    let n = BigInt::from_f64(floor).ok_or(QcError::CellSearchOverflow)?;
    let mut a = Rational::integer(n.clone());
    let mut c = Rational::integer(n + 1);
    let margin_a = cell_margin(&a, z)?;
    if margin_a >= 0.0 {
        return Ok(a);
    }
    let margin_c = cell_margin(&c, z)?;
    if margin_c >= 0.0 {
        return Ok(c);
    }
    for _ in 0..LOCATE_MAX_STEPS {
        let edge = FareyEdge::new(a.clone(), c.clone())?;
        let b = edge.mediant();
        let margin_b = cell_margin(&b, z)?;
        if margin_b >= 0.0 {
            return Ok(b);
        }
        let (fa, fb, fc) = (a.to_f64(), b.to_f64(), c.to_f64());
        if in_half_disk(fa, fb, w) {
            c = b;
            continue;
        }
        if in_half_disk(fb, fc, w) {
            a = b;
            continue;
        }
        // Inside the triangle (a, b, c) but in no child half-disk and not in
        // the cell at b: the point is in a corner sliver of the cell at a or
        // c, within rounding of their boundaries.
        let margin_a = cell_margin(&a, z)?;
        let margin_c = cell_margin(&c, z)?;
        return Ok(if margin_a >= margin_c && margin_a >= margin_b {
            a
        } else if margin_c >= margin_b {
            c
        } else {
            b
        });
    }
    Err(QcError::CellSearchOverflow)
}
