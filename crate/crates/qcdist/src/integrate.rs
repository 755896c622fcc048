//! One-dimensional adaptive Simpson integration.
//!
//! The interval is first cut into a fixed number of panels so that narrow
//! features (a spike between two coarse sample points, a bimodal integrand
//! with well-separated bumps) cannot hide from the initial estimate, then each
//! panel is refined adaptively with the usual Richardson acceptance test.
//!
//! Non-finite integrand values are propagated instead of "averaged over": the
//! first infinity or NaN seen anywhere in the recursion becomes the result.
//! Divergence computations rely on this to report an infinite KL exactly.

const PRESPLIT_PANELS: usize = 16;
const MAX_DEPTH: usize = 48;

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    if !flm.is_finite() {
        return flm;
    }
    let frm = f(rm);
    if !frm.is_finite() {
        return frm;
    }
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    let half_tol = 0.5 * tol;
    let l = refine(f, a, lm, m, fa, flm, fm, left, half_tol, depth + 1);
    if !l.is_finite() {
        return l;
    }
    let r = refine(f, m, rm, b, fm, frm, fb, right, half_tol, depth + 1);
    if !r.is_finite() {
        return r;
    }
    l + r
}

/// Integrate `f` over `[a, b]` to roughly absolute accuracy `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let step = (b - a) / PRESPLIT_PANELS as f64;
    let panel_tol = tol / PRESPLIT_PANELS as f64;
    let mut total = 0.0;
    let mut left = a;
    let mut f_left = f(left);
    if !f_left.is_finite() {
        return f_left;
    }
    for i in 0..PRESPLIT_PANELS {
        let right = if i + 1 == PRESPLIT_PANELS {
            b
        } else {
            a + step * (i + 1) as f64
        };
        let mid = 0.5 * (left + right);
        let f_mid = f(mid);
        if !f_mid.is_finite() {
            return f_mid;
        }
        let f_right = f(right);
        if !f_right.is_finite() {
            return f_right;
        }
        let whole = simpson(f_left, f_mid, f_right, left, right);
        let part = refine(
            &f, left, mid, right, f_left, f_mid, f_right, whole, panel_tol, 0,
        );
        if !part.is_finite() {
            return part;
        }
        total += part;
        left = right;
        f_left = f_right;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::std_normal_pdf;

    #[test]
    fn exact_on_cubics() {
        let got = adaptive_simpson(|x| x * x * x, 0.0, 1.0, 1e-12);
        assert!((got - 0.25).abs() < 1e-13);
    }

    #[test]
    fn normal_density_integrates_to_one() {
        let got = adaptive_simpson(std_normal_pdf, -8.0, 8.0, 1e-10);
        assert!((got - 1.0).abs() < 1e-9, "got {got}");
    }

    #[test]
    fn resolves_a_narrow_spike() {
        // A Gaussian of width 1e-3 placed off any panel boundary.
        let c = 0.37;
        let s = 1e-3;
        let got = adaptive_simpson(|x| std_normal_pdf((x - c) / s) / s, 0.0, 1.0, 1e-9);
        assert!((got - 1.0).abs() < 1e-7, "got {got}");
    }

    #[test]
    fn oscillatory_integrand() {
        let got = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-10);
        assert!((got - 2.0).abs() < 1e-9);
    }

    #[test]
    fn infinities_propagate() {
        let got = adaptive_simpson(
            |x| if x > 0.3 { f64::INFINITY } else { 1.0 },
            0.0,
            1.0,
            1e-8,
        );
        assert!(got.is_infinite() && got > 0.0);
    }

    #[test]
    fn empty_interval_is_zero() {
        assert_eq!(adaptive_simpson(|x| x, 2.0, 2.0, 1e-8), 0.0);
    }
}
