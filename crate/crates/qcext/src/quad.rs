//! Small numerical helpers: adaptive Simpson quadrature and compensated
//! summation.  Kept crate-private; public interfaces expose only results.

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`.  Uses the classical halving estimate `|S₂ − S₁|/15` with Richardson
/// extrapolation on acceptance.  The recursion is depth-limited; integrands
/// here are smooth on the interior of each panel, so the limit is never the
/// binding constraint in practice.
pub(crate) fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        let half = 0.5 * tol;
        recurse(f, a, m, fa, flm, fm, left, half, depth - 1)
            + recurse(f, m, b, fm, frm, fb, right, half, depth - 1)
    }
}

/// Compensated (Kahan–Neumaier) accumulator, used when summing many strip
/// and cell energies so the final total does not depend on summation noise.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_smooth_functions_to_tolerance() {
        let pi = std::f64::consts::PI;
        let s = adaptive_simpson(&|x: f64| x.sin(), 0.0, pi, 1e-12);
        assert!((s - 2.0).abs() < 1e-11, "got {s}");

        let c = adaptive_simpson(&|x: f64| (-x * x).exp(), -6.0, 6.0, 1e-12);
        assert!((c - pi.sqrt()).abs() < 1e-10, "got {c}");
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let s = adaptive_simpson(&|x: f64| 3.0 * x * x + 2.0 * x - 1.0, -1.0, 2.0, 1e-14);
        // antiderivative x^3 + x^2 - x evaluated at 2 and -1
        assert!((s - (10.0 - 1.0)).abs() < 1e-12, "got {s}");
    }

    #[test]
    fn kahan_sum_recovers_cancelled_tails() {
        let mut k = KahanSum::default();
        k.add(1.0);
        for _ in 0..10_000 {
            k.add(1e-17);
        }
        assert!((k.total() - (1.0 + 1e-13)).abs() < 1e-16);
    }
}
