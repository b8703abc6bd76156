//! Sweep tables of `(c, x, n)` and their CSV / text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::curve::{CalibratedCurve, ClosedForm};
use crate::solver::{solve_schedule, ScheduleRequest};

/// Decimal places used at render time. Values are kept at full precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rounding {
    pub c: usize,
    pub x: usize,
    pub n: usize,
    /// Places for `t` and `f` in extended tables.
    pub currency: usize,
}

impl Rounding {
    pub fn uniform(places: usize) -> Self {
        Rounding {
            c: places,
            x: places,
            n: places,
            currency: 2,
        }
    }
}

impl Default for Rounding {
    fn default() -> Self {
        Rounding::uniform(3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub rounding: Rounding,
    /// Variable cost applied to every row; the `c` column is then `c_real`.
    pub vc_a: f64,
    /// Adds `t`, `f` and `n_adjusted` columns.
    pub extended: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            rounding: Rounding::default(),
            vc_a: 0.0,
            extended: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowOutcome {
    Feasible {
        x: f64,
        n: f64,
        t: f64,
        f: f64,
        n_adjusted: f64,
    },
    Infeasible {
        code: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub c: f64,
    #[serde(flatten)]
    pub outcome: RowOutcome,
}

impl SweepRow {
    pub fn x(&self) -> Option<f64> {
        match self.outcome {
            RowOutcome::Feasible { x, .. } => Some(x),
            RowOutcome::Infeasible { .. } => None,
        }
    }

    pub fn n(&self) -> Option<f64> {
        match self.outcome {
            RowOutcome::Feasible { n, .. } => Some(n),
            RowOutcome::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, RowOutcome::Feasible { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub label: String,
    pub rows: Vec<SweepRow>,
    pub rounding: Rounding,
    pub extended: bool,
}

/// Solves one schedule per `c` value. Rows come out sorted by descending
/// `c`; values the curve cannot support become infeasible rows.
pub fn sweep(curve: &CalibratedCurve, c_values: &[f64], options: &SweepOptions) -> SweepTable {
    let mut cs = c_values.to_vec();
    cs.sort_by(|a, b| b.total_cmp(a));
    let rows = cs
        .into_iter()
        .map(|c| {
            let request = ScheduleRequest::new(curve, c).with_variable_cost(options.vc_a);
            let outcome = match solve_schedule(&request) {
                Ok(s) => RowOutcome::Feasible {
                    x: s.x,
                    n: s.n,
                    t: s.t,
                    f: s.f,
                    n_adjusted: s.n_adjusted,
                },
                Err(e) => RowOutcome::Infeasible { code: e.code() },
            };
            SweepRow { c, outcome }
        })
        .collect();
    SweepTable {
        label: curve.family().to_string(),
        rows,
        rounding: options.rounding,
        extended: options.extended,
    }
}

/// The three published reference tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperTable {
    /// Linear NAR, 10 rows.
    Table1,
    /// Quadratic NAR, 13 rows.
    Table3,
    /// Exponential NAR, 23 rows.
    Table4,
}

impl PaperTable {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(PaperTable::Table1),
            3 => Some(PaperTable::Table3),
            4 => Some(PaperTable::Table4),
            _ => None,
        }
    }

    pub fn family(&self) -> ClosedForm {
        match self {
            PaperTable::Table1 => ClosedForm::Linear,
            PaperTable::Table3 => ClosedForm::Quadratic,
            PaperTable::Table4 => ClosedForm::Exponential,
        }
    }

    /// Target shares at which the table is tabulated, top row first.
    pub fn c_values(&self) -> Vec<f64> {
        let hundredths: &[u32] = match self {
            PaperTable::Table1 => &[50, 48, 46, 42, 38, 32, 26, 18, 9, 0],
            PaperTable::Table3 => &[57, 55, 50, 45, 40, 35, 30, 25, 20, 15, 10, 5, 0],
            PaperTable::Table4 => &[
                43, 42, 40, 38, 36, 34, 32, 30, 28, 26, 24, 22, 20, 18, 16, 14, 12, 10, 8, 6, 4, 2,
                0,
            ],
        };
        hundredths.iter().map(|&h| h as f64 / 100.0).collect()
    }

    pub fn rounding(&self) -> Rounding {
        match self {
            PaperTable::Table1 => Rounding {
                c: 2,
                x: 2,
                n: 3,
                currency: 2,
            },
            PaperTable::Table3 | PaperTable::Table4 => Rounding {
                c: 2,
                x: 3,
                n: 3,
                currency: 2,
            },
        }
    }
}

/// Recomputes a published table at its own abscissae and rounding.
pub fn paper_table(which: PaperTable) -> SweepTable {
    let curve =
        CalibratedCurve::from_optimum(which.family(), 1.0, 1.0).expect("unit optimum is valid");
    let options = SweepOptions {
        rounding: which.rounding(),
        ..SweepOptions::default()
    };
    sweep(&curve, &which.c_values(), &options)
}

/// Round half away from zero, then print with exactly `places` decimals.
pub fn format_fixed(value: f64, places: usize) -> String {
    let scale = 10f64.powi(places as i32);
    let rounded = (value * scale).round() / scale;
    // Avoid printing "-0.000".
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded:.places$}")
}

impl SweepTable {
    fn header(&self) -> &'static [&'static str] {
        if self.extended {
            &["c", "x", "t", "f", "n", "n_adjusted"]
        } else {
            &["c", "x", "n"]
        }
    }

    fn cells(&self, row: &SweepRow) -> Vec<String> {
        let r = &self.rounding;
        let mut cells = vec![format_fixed(row.c, r.c)];
        match row.outcome {
            RowOutcome::Feasible {
                x,
                n,
                t,
                f,
                n_adjusted,
            } => {
                cells.push(format_fixed(x, r.x));
                if self.extended {
                    cells.push(format_fixed(t, r.currency));
                    cells.push(format_fixed(f, r.currency));
                    cells.push(format_fixed(n, r.n));
                    cells.push(format_fixed(n_adjusted, r.n));
                } else {
                    cells.push(format_fixed(n, r.n));
                }
            }
            RowOutcome::Infeasible { .. } => {
                cells.extend(std::iter::repeat_n(
                    "infeasible".to_string(),
                    self.header().len() - 1,
                ));
            }
        }
        cells
    }

    /// Comma-separated, one header line, newline-terminated rows.
    pub fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&self.cells(row).join(","));
            out.push('\n');
        }
        out
    }

    /// Right-aligned columns for terminal output.
    pub fn to_text(&self) -> String {
        let header: Vec<String> = self.header().iter().map(|s| s.to_string()).collect();
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| self.cells(r)).collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|i| {
                body.iter()
                    .map(|r| r[i].len())
                    .chain(std::iter::once(header[i].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.label);
        for line in std::iter::once(&header).chain(body.iter()) {
            let cols: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", cols.join("  "));
        }
        out
    }
}
