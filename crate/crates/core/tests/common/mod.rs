//! Independent numerical oracles shared by the integration tests. Nothing
//! here calls into the solver paths it is used to check.

#![allow(dead_code)]

use tpschedule::{CalibratedCurve, ClosedForm};

pub const FAMILIES: [ClosedForm; 3] = [
    ClosedForm::Linear,
    ClosedForm::Quadratic,
    ClosedForm::Exponential,
];

pub fn unit(family: ClosedForm) -> CalibratedCurve {
    CalibratedCurve::from_optimum(family, 1.0, 1.0).unwrap()
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
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
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

pub fn central_difference<F: Fn(f64) -> f64>(g: F, x: f64, h: f64) -> f64 {
    (g(x + h) - g(x - h)) / (2.0 * h)
}

/// Brute-force maximum of `g` on a uniform grid over `[lo, hi]`.
pub fn grid_search_max<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, resolution: f64) -> (f64, f64) {
    let steps = ((hi - lo) / resolution).round() as usize;
    (0..=steps)
        .map(|i| lo + (hi - lo) * i as f64 / steps as f64)
        .map(|x| (x, g(x)))
        .fold((lo, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

/// Brute-force root: bracket the last downward crossing of `g(x) = c` on a
/// fine grid ending at 1, then bisect it.
pub fn brute_force_upper_root<F: Fn(f64) -> f64>(g: F, c: f64) -> f64 {
    let steps = 100_000;
    let mut hi = 1.0;
    let mut lo = 1.0;
    for i in (0..steps).rev() {
        let x = i as f64 / steps as f64;
        if g(x) >= c {
            lo = x;
            break;
        }
        hi = x;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
