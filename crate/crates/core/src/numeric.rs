//! Bracketing root-finder and a one-dimensional maximizer.

/// Bisection on a sign-changing bracket `[lo, hi]`.
///
/// Stops once the bracket is no wider than `tol`, the midpoint can no longer
/// split it in floating point, or `max_iter` halvings have been made. An
/// exact zero at an endpoint or midpoint is returned immediately.
pub fn bisect<F>(g: F, mut lo: f64, mut hi: f64, tol: f64, max_iter: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let mut g_lo = g(lo);
    if g_lo == 0.0 {
        return lo;
    }
    if g(hi) == 0.0 {
        return hi;
    }
    for _ in 0..max_iter {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if (g_mid > 0.0) == (g_lo > 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Golden-section search for the maximum of a unimodal `g` on `[lo, hi]`.
pub fn golden_max<F>(g: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut g1 = g(x1);
    let mut g2 = g(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        }
    }
    if g1 >= g2 {
        x1
    } else {
        x2
    }
}

/// Locates the maximum of `g` over `(lo, hi]` by scanning `steps` equal cells
/// and polishing the best cell with golden-section search. Returns
/// `(argmax, max)`.
pub fn grid_max<F>(g: F, lo: f64, hi: f64, steps: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let h = (hi - lo) / steps as f64;
    let mut best_i = 1;
    let mut best = f64::NEG_INFINITY;
    for i in 1..=steps {
        let v = g(lo + h * i as f64);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let a = lo + h * (best_i - 1) as f64;
    let b = (lo + h * (best_i + 1) as f64).min(hi);
    let x = golden_max(&g, a, b, 1e-15);
    let v = g(x);
    if v > best {
        (x, v)
    } else {
        (lo + h * best_i as f64, best)
    }
}
