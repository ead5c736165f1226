//! Adaptive composite Simpson quadrature.

/// Relative tolerance used for every rate integral in the crate.
pub const REL_TOL: f64 = 1e-9;
/// Maximum bisection depth of any panel.
pub const MAX_DEPTH: u32 = 40;

// Initial uniform split (2^MIN_DEPTH panels) so that a narrow peak in the
// middle of a long interval is never missed by the first three samples.
const MIN_DEPTH: u32 = 4;

/// Integrates `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// The tolerance is taken relative to a coarse estimate of `∫|f|`; an
/// identically zero integrand returns exactly zero.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, rel_tol: f64, max_depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return 0.0;
    }
    let panels = 1usize << MIN_DEPTH;
    let h = (b - a) / panels as f64;

    // Samples at panel edges and midpoints, shared between the coarse
    // estimate and the recursion.
    let mut edges = Vec::with_capacity(panels + 1);
    for k in 0..=panels {
        let x = if k == panels { b } else { a + h * k as f64 };
        edges.push((x, f(x)));
    }
    let mids: Vec<(f64, f64)> = edges
        .windows(2)
        .map(|w| {
            let m = 0.5 * (w[0].0 + w[1].0);
            (m, f(m))
        })
        .collect();

    let mut scale = 0.0;
    let mut wholes = Vec::with_capacity(panels);
    for (w, &(_, fm)) in edges.windows(2).zip(&mids) {
        let (x0, f0) = w[0];
        let (x1, f1) = w[1];
        let width = x1 - x0;
        wholes.push(width / 6.0 * (f0 + 4.0 * fm + f1));
        scale += width.abs() / 6.0 * (f0.abs() + 4.0 * fm.abs() + f1.abs());
    }
    if scale == 0.0 {
        return 0.0;
    }
    let eps = rel_tol * scale / panels as f64;

    let mut total = 0.0;
    for (k, &whole) in wholes.iter().enumerate() {
        let (x0, f0) = edges[k];
        let (x1, f1) = edges[k + 1];
        let (m, fm) = mids[k];
        total += refine(&f, x0, m, x1, f0, fm, f1, whole, eps, max_depth.saturating_sub(MIN_DEPTH));
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(f: &F, a: f64, m: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64
where
    F: Fn(f64) -> f64,
{
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    refine(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + refine(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}
