//! Class-membership diagnostics for shear functions: balance, square
//! sums, fan window sums, and sampled quasisymmetry ratios.

use farey_core::Rational;
use serde::Serialize;

use crate::ops::{check_finite_balanced, psi, qs_ratio};
use crate::{CoordError, CoordFn, CoordKind, CoordScalar};

/// Parameters controlling the truncations and sampling in a
/// [`ClassReport`]; the report is deterministic given these.
#[derive(Clone, Copy, Debug)]
pub struct ReportParams {
    /// Generation cutoffs used for the diamond square-sum estimate when
    /// the image has unbounded support.
    pub l2_cutoffs: [usize; 3],
    /// Extra fan indices examined on each side of the support window.
    pub window_margin: i64,
    /// Largest quasisymmetry window length sampled.
    pub max_window: usize,
}

impl Default for ReportParams {
    fn default() -> Self {
        ReportParams { l2_cutoffs: [4, 6, 8], window_margin: 2, max_window: 6 }
    }
}

/// Diamond-side square sum: exact for balanced input, otherwise a
/// monotone sequence of generation-cutoff truncations (never a single
/// number for unbounded support).
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum DiamondL2 {
    /// The image has finite support; the value is its full square sum.
    Exact(f64),
    /// Truncated square sums as `(generation_cutoff, value)` pairs.
    Truncated(Vec<(usize, f64)>),
}

/// Deterministic diagnostics of a finite shear function.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    /// Every vertex fan sums to zero.
    pub finite_balanced: bool,
    /// Square sum of the shear values.
    pub l2_shear: f64,
    /// Square sum of the diamond image (exact or truncated).
    pub l2_diamond: DiamondL2,
    /// Largest absolute fan window sum `|sum_{i=n}^{m} s(e_i)|` over all
    /// support vertices and all windows inside the (margin-extended)
    /// support range.
    pub max_fan_window_sum: f64,
    /// Extremes of the sampled quasisymmetry ratios `s(k, n; v)`.
    pub qs_ratio_range: (f64, f64),
}

/// Computes a [`ClassReport`] for a finite shear function.
pub fn class_report<T: CoordScalar>(
    s: &CoordFn<T>,
    params: &ReportParams,
) -> Result<ClassReport, CoordError> {
    if s.kind() != CoordKind::Shear {
        return Err(CoordError::KindMismatch { expected: "shear", got: s.kind().name() });
    }
    let finite_balanced = check_finite_balanced(s)?;
    let l2_shear = crate::ops::l2_norm(s)?;

    let image = psi(s)?;
    let l2_diamond = if finite_balanced {
        let finite = image.materialize()?;
        DiamondL2::Exact(crate::ops::l2_norm(&finite)?)
    } else {
        DiamondL2::Truncated(
            params
                .l2_cutoffs
                .iter()
                .map(|&g| (g, crate::ops::l2_norm_truncated(&image, g)))
                .collect(),
        )
    };

    // Fan windows and quasisymmetry samples share the per-vertex support
    // index ranges.
    let mut max_window_sum = 0.0f64;
    let mut qs_min = f64::INFINITY;
    let mut qs_max = f64::NEG_INFINITY;
    let vertices: std::collections::BTreeSet<Rational> = s
        .support()
        .flat_map(|(e, _)| [e.a().clone(), e.b().clone()])
        .collect();
    for v in &vertices {
        let chart = farey_core::FanChart::new(v);
        let mut indices: Vec<i64> = s
            .support()
            .filter(|(e, _)| e.contains(v))
            .map(|(e, _)| chart.index(e).expect("support edge in fan"))
            .collect();
        indices.sort_unstable();
        let lo = indices[0] - params.window_margin;
        let hi = indices[indices.len() - 1] + params.window_margin;
        let values: Vec<f64> = (lo..=hi)
            .map(|i| s.value(&chart.edge(i)).to_f64_lossy())
            .collect();
        // All windows [n, m] within the extended range.
        for n in 0..values.len() {
            let mut acc = 0.0;
            for m in n..values.len() {
                acc += values[m];
                max_window_sum = max_window_sum.max(acc.abs());
            }
        }
        for k in lo..=hi {
            for n in 0..=params.max_window {
                let ratio = qs_ratio(s, v, k, n)?;
                qs_min = qs_min.min(ratio);
                qs_max = qs_max.max(ratio);
            }
        }
    }
    if vertices.is_empty() {
        qs_min = 1.0;
        qs_max = 1.0;
    }

    Ok(ClassReport {
        finite_balanced,
        l2_shear,
        l2_diamond,
        max_fan_window_sum: max_window_sum,
        qs_ratio_range: (qs_min, qs_max),
    })
}
