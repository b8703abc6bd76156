//! Cost-plus transfer-price schedules with a negotiation zone.
//!
//! A source division sells to a receiving division at a single cost-plus
//! price `t` for the first `f = x·q` units of the group-optimal output `q`,
//! and the two negotiate over the rest. Given the source division's target
//! share `c` of the maximum group contribution, this crate finds the largest
//! `x` that recovers the target without the price line cutting the receiving
//! division's net-marginal-revenue curve, the price `t`, and the share `n`
//! of group contribution left to negotiation.
//!
//! ```
//! use tpschedule::{CalibratedCurve, ClosedForm, ScheduleRequest, solve_schedule};
//!
//! let curve = CalibratedCurve::from_optimum(ClosedForm::Quadratic, 100.0, 1000.0)?;
//! let s = solve_schedule(&ScheduleRequest::new(&curve, 0.4).with_variable_cost(20.0))?;
//! assert_eq!(s.c_effective, 0.25);
//! assert!((s.t - 42.15).abs() < 0.01);
//! # Ok::<(), tpschedule::Error>(())
//! ```

pub mod curve;
pub mod error;
pub mod interpolation;
pub mod numeric;
pub mod solver;
pub mod table;

pub use curve::{
    calibrate, nmr_from_nar, CalibratedCurve, ClosedForm, CurveSpec, CurveWarning, Family, Scale,
};
pub use error::{Error, Result};
pub use interpolation::{lagrange_nar, Interpolant, Polynomial};
pub use solver::{
    adjust_for_variable_cost, covered_share, feasibility_peak, max_feasible_c, negotiation_share,
    quadratic_roots, solve_exponential_x, solve_general_x, solve_linear_x, solve_quadratic_x,
    solve_schedule, transfer_price, CubicRoots, FeasibilityPeak, Schedule, ScheduleRequest,
};
pub use table::{
    format_fixed, paper_table, sweep, PaperTable, Rounding, SweepOptions, SweepRow, SweepTable,
};
