//! Transfer-price schedules.
//!
//! A fixed cost-plus price `t` applied to the first `f = x·q` units must
//! earn the source division the share `c` of the maximum group contribution
//! `p·q`, so `t·x = c·p`, while never cutting the NMR curve. The largest
//! such `x` is where the hyperbola `t = c·p/x` meets NMR, i.e. the largest
//! root of
//!
//! ```text
//! h(x) = x·nmr(x·q) / p = c,    x in (0, 1].
//! ```
//!
//! The closed-form families reduce this to `2x(1-x) = c` (linear),
//! `x³ - x + 2c/3 = 0` (quadratic) and `x(1-x)e^(1-x) = c` (exponential).
//! Over the remaining output `(f, q]` the divisions negotiate; the share of
//! group contribution at stake is `n = 1 - x·nar(x·q)/p`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curve::{CalibratedCurve, Family};
use crate::error::{Error, Result};
use crate::numeric::{bisect, grid_max};

/// Distance from `c_max` within which a request is treated as the tangency
/// case rather than an interior or infeasible one.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Grid resolution for the peak search of `h` in the general solver.
pub const GENERAL_SCAN_STEPS: usize = 4096;
const MAX_BISECTIONS: usize = 200;

/// Largest feasible `c` for the linear family.
pub const LINEAR_C_MAX: f64 = 0.5;

/// `sqrt(1/3)`: largest feasible `c` for the quadratic family, attained at
/// `x = 1/sqrt(3)`.
pub fn quadratic_c_max() -> f64 {
    (1.0f64 / 3.0).sqrt()
}

/// Stationary point `(3 - sqrt(5)) / 2` of `x(1-x)e^(1-x)`.
pub fn exponential_peak_x() -> f64 {
    (3.0 - 5f64.sqrt()) / 2.0
}

/// Largest feasible `c` for the exponential family, about 0.43797.
pub fn exponential_c_max() -> f64 {
    exponential_share(exponential_peak_x())
}

fn exponential_share(x: f64) -> f64 {
    x * (1.0 - x) * (1.0 - x).exp()
}

fn check_share(c: f64) -> Result<()> {
    if c.is_finite() && c >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "c",
            value: c,
            reason: "contribution share must be a finite non-negative number",
        })
    }
}

/// Upper root of `2x(1-x) = c`, valid for `0 <= c <= 0.5`.
pub fn solve_linear_x(c: f64) -> Result<f64> {
    check_share(c)?;
    if c > LINEAR_C_MAX {
        return Err(Error::CExceedsFeasible {
            c,
            c_max: LINEAR_C_MAX,
        });
    }
    Ok(0.5 + (0.25 - 0.5 * c).max(0.0).sqrt())
}

/// The three real roots of `x³ - x + 2c/3 = 0`.
///
/// `x1` is the schedule root; `x2` is negative; `x3` is the lower root in
/// `[0, x1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Trigonometric solution of the quadratic-family cubic.
///
/// With `Q = -1/3` and `R = -c/3` the discriminant `D = Q³ + R² = (c² - 1/3)/9`
/// is negative for `c < sqrt(1/3)`, so all three roots are real:
/// `x_k = 2·sqrt(-Q)·cos((θ + 2πk)/3)` with `θ = arccos(R / sqrt(-Q³)) =
/// arccos(-c·sqrt(3))`.
pub fn quadratic_roots(c: f64) -> Result<CubicRoots> {
    check_share(c)?;
    let c_max = quadratic_c_max();
    if c >= c_max {
        return Err(Error::CExceedsFeasible { c, c_max });
    }
    let theta = (-c * 3f64.sqrt()).acos();
    let amp = 2.0 / 3f64.sqrt();
    let x1 = (amp * (theta / 3.0).cos()).min(1.0);
    let x2 = amp * ((theta + 2.0 * PI) / 3.0).cos();
    // Vieta (x1·x2·x3 = -2c/3) keeps x3 accurate when it is close to zero.
    let x3 = (2.0 * c / 3.0) / -(x1 * x2);
    Ok(CubicRoots { x1, x2, x3 })
}

/// Upper root of `x³ - x + 2c/3 = 0` for `0 <= c < sqrt(1/3)`.
pub fn solve_quadratic_x(c: f64) -> Result<f64> {
    quadratic_roots(c).map(|r| r.x1)
}

/// Largest root of `x(1-x)e^(1-x) = c` for `0 <= c < c_max`.
pub fn solve_exponential_x(c: f64) -> Result<f64> {
    check_share(c)?;
    let c_max = exponential_c_max();
    if c >= c_max {
        return Err(Error::CExceedsFeasible { c, c_max });
    }
    if c == 0.0 {
        return Ok(1.0);
    }
    // The share falls monotonically from its peak to zero at x = 1.
    Ok(bisect(
        |x| exponential_share(x) - c,
        exponential_peak_x(),
        1.0,
        0.0,
        MAX_BISECTIONS,
    ))
}

/// Contribution share covered by a price that meets NMR at `f = x·q`:
/// `h(x) = x·nmr(x·q)/p`.
pub fn covered_share(curve: &CalibratedCurve, x: f64) -> f64 {
    x * curve.nmr(x * curve.q()) / curve.p()
}

/// Peak of `h` on `(0, 1]`: the tangency point and the largest feasible `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityPeak {
    pub x: f64,
    pub c_max: f64,
}

/// Closed-form peak for the analytic families, numeric for sampled curves.
pub fn feasibility_peak(curve: &CalibratedCurve) -> FeasibilityPeak {
    match curve.family() {
        Family::Linear => FeasibilityPeak {
            x: 0.5,
            c_max: LINEAR_C_MAX,
        },
        Family::Quadratic => FeasibilityPeak {
            x: quadratic_c_max(),
            c_max: quadratic_c_max(),
        },
        Family::Exponential => FeasibilityPeak {
            x: exponential_peak_x(),
            c_max: exponential_c_max(),
        },
        Family::Points => numeric_peak(curve),
    }
}

fn numeric_peak(curve: &CalibratedCurve) -> FeasibilityPeak {
    let (x, c_max) = grid_max(|x| covered_share(curve, x), 0.0, 1.0, GENERAL_SCAN_STEPS);
    FeasibilityPeak { x, c_max }
}

/// Supremum of `h(x) = x·nmr(x·q)/p` over `(0, 1]`.
pub fn max_feasible_c(curve: &CalibratedCurve) -> f64 {
    feasibility_peak(curve).c_max
}

/// Largest `x` in `(0, 1]` with `h(x) = c`, for any calibrated curve.
///
/// Scans `h` on a 4096-cell grid, polishes the peak, then bisects on the
/// descending branch between the peak and `x = 1`. Does not use any family's
/// closed form, so it doubles as a cross-check for the analytic solvers.
pub fn solve_general_x(curve: &CalibratedCurve, c: f64) -> Result<f64> {
    check_share(c)?;
    if c == 0.0 {
        return Ok(1.0);
    }
    let peak = numeric_peak(curve);
    if c > peak.c_max + FEASIBILITY_TOL {
        return Err(Error::CExceedsFeasible {
            c,
            c_max: peak.c_max,
        });
    }
    if c >= peak.c_max {
        return Ok(peak.x);
    }
    Ok(bisect(
        |x| covered_share(curve, x) - c,
        peak.x,
        1.0,
        0.0,
        MAX_BISECTIONS,
    ))
}

/// Proportion of group contribution left to negotiation when the fixed price
/// covers `x·q`: `(1/pq)·∫ nmr` over `[x·q, q]`.
pub fn negotiation_share(curve: &CalibratedCurve, x: f64) -> f64 {
    let n = match curve.family() {
        Family::Linear => (1.0 - x) * (1.0 - x),
        Family::Quadratic => 1.0 - 1.5 * x + 0.5 * x * x * x,
        Family::Exponential => 1.0 - x * (1.0 - x).exp(),
        Family::Points => 1.0 - x * curve.nar(x * curve.q()) / curve.p(),
    };
    n.max(0.0)
}

/// `t = c·p/x`.
pub fn transfer_price(c: f64, p: f64, x: f64) -> f64 {
    c * p / x
}

/// Effective share once the source division's variable cost is netted out:
/// `c = (p·c_real - vc_a) / (p - vc_a)`.
pub fn adjust_for_variable_cost(c_real: f64, p: f64, vc_a: f64) -> Result<f64> {
    if !(vc_a.is_finite() && vc_a >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "vc_a",
            value: vc_a,
            reason: "variable cost must be a finite non-negative number",
        });
    }
    if vc_a >= p {
        return Err(Error::VariableCostTooHigh { vc_a, p });
    }
    if vc_a == 0.0 {
        return Ok(c_real);
    }
    if p * c_real < vc_a {
        return Err(Error::NegativeEffectiveContribution { c_real, p, vc_a });
    }
    Ok((p * c_real - vc_a) / (p - vc_a))
}

#[derive(Debug, Clone, Copy)]
pub struct ScheduleRequest<'a> {
    pub curve: &'a CalibratedCurve,
    /// Target contribution as a share of maximum group contribution.
    pub c_real: f64,
    /// Source division's constant variable cost per unit.
    pub vc_a: f64,
}

impl<'a> ScheduleRequest<'a> {
    pub fn new(curve: &'a CalibratedCurve, c_real: f64) -> Self {
        ScheduleRequest {
            curve,
            c_real,
            vc_a: 0.0,
        }
    }

    pub fn with_variable_cost(mut self, vc_a: f64) -> Self {
        self.vc_a = vc_a;
        self
    }
}

/// A solved transfer-price schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub c_real: f64,
    pub vc_a: f64,
    /// Share fed to the dimensionless solver.
    pub c_effective: f64,
    pub c_max: f64,
    /// Covered proportion of optimal output.
    pub x: f64,
    /// Covered output `x·q`.
    pub f: f64,
    /// Cost-plus transfer price.
    pub t: f64,
    /// Negotiation share of the dimensionless model.
    pub n: f64,
    /// `n·(1 - vc_a/p)`.
    pub n_adjusted: f64,
    pub at_feasibility_boundary: bool,
}

/// Full pipeline: variable-cost adjustment, family solver, price and
/// negotiation share.
pub fn solve_schedule(request: &ScheduleRequest<'_>) -> Result<Schedule> {
    let curve = request.curve;
    let (c_real, vc_a) = (request.c_real, request.vc_a);
    if !(c_real.is_finite() && (0.0..1.0).contains(&c_real)) {
        return Err(Error::InvalidParameter {
            name: "c_real",
            value: c_real,
            reason: "target contribution must lie in [0, 1)",
        });
    }
    let p = curve.p();
    let c = adjust_for_variable_cost(c_real, p, vc_a)?;

    let peak = feasibility_peak(curve);
    if c > peak.c_max + FEASIBILITY_TOL {
        return Err(Error::CExceedsFeasible {
            c,
            c_max: peak.c_max,
        });
    }
    let at_boundary = c >= peak.c_max - FEASIBILITY_TOL;
    let x = if at_boundary {
        peak.x
    } else {
        match curve.family() {
            Family::Linear => solve_linear_x(c)?,
            Family::Quadratic => solve_quadratic_x(c)?,
            Family::Exponential => solve_exponential_x(c)?,
            Family::Points => solve_general_x(curve, c)?,
        }
    };

    let t = transfer_price(c, p - vc_a, x) + vc_a;
    let n = negotiation_share(curve, x);
    Ok(Schedule {
        c_real,
        vc_a,
        c_effective: c,
        c_max: peak.c_max,
        x,
        f: x * curve.q(),
        t,
        n,
        n_adjusted: n * (1.0 - vc_a / p),
        at_feasibility_boundary: at_boundary,
    })
}
