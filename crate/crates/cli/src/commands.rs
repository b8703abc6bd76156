use std::fmt::Write as _;

use serde::Serialize;
use tpschedule::{
    feasibility_peak, format_fixed, paper_table, solve_schedule, sweep, CalibratedCurve,
    CurveWarning, PaperTable, Rounding, Schedule, ScheduleRequest, SweepOptions,
};

use crate::args::{CommonArgs, CurveArgs, Format, TableArgs};
use crate::error::CliError;
use crate::scenario::{parse_grid, resolve, Resolved, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Warnings,
}

pub struct Output {
    pub body: String,
    pub status: Status,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            status: Status::Ok,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn money(v: f64, label: Option<&str>) -> String {
    format!("{}{}", label.unwrap_or(""), format_fixed(v, 2))
}

fn request(r: &Resolved) -> ScheduleRequest<'_> {
    ScheduleRequest::new(&r.curve, r.scenario.c_real).with_variable_cost(r.scenario.vc_a)
}

/// JSON form of `solve`: the scenario fields plus results, so the output can
/// be fed back in as a scenario.
#[derive(Serialize)]
struct SolveJson<'a> {
    #[serde(flatten)]
    scenario: &'a Scenario,
    p: f64,
    q: f64,
    schedule: Schedule,
    warnings: &'a [CurveWarning],
}

pub fn solve(args: &CommonArgs) -> Result<Output, CliError> {
    let r = resolve(args)?;
    let s = solve_schedule(&request(&r))?;
    let label = r.scenario.currency_label.as_deref();
    let body = match args.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&SolveJson {
            scenario: &r.scenario,
            p: r.curve.p(),
            q: r.curve.q(),
            schedule: s,
            warnings: r.curve.warnings(),
        }),
        Format::Csv => format!(
            "c_real,vc_a,c_effective,c_max,x,f,t,n,n_adjusted,at_feasibility_boundary\n{},{},{},{},{},{},{},{},{},{}\n",
            s.c_real,
            s.vc_a,
            s.c_effective,
            s.c_max,
            s.x,
            s.f,
            s.t,
            s.n,
            s.n_adjusted,
            s.at_feasibility_boundary
        ),
        Format::Text => {
            let mut out = String::new();
            let mut line = |k: &str, v: String| {
                let _ = writeln!(out, "{k:<20}{v}");
            };
            line("family", r.curve.family().to_string());
            line("p", money(r.curve.p(), label));
            line("q", format_fixed(r.curve.q(), 2));
            line("c_real", format_fixed(s.c_real, 3));
            line("vc_a", money(s.vc_a, label));
            line("c_effective", format_fixed(s.c_effective, 3));
            line("c_max", format_fixed(s.c_max, 3));
            line("x", format_fixed(s.x, 3));
            line("f", format_fixed(s.f, 2));
            line("t", money(s.t, label));
            line("n", format_fixed(s.n, 3));
            line(
                "n_adjusted",
                format!(
                    "{} ({}%)",
                    format_fixed(s.n_adjusted, 3),
                    format_fixed(100.0 * s.n_adjusted, 1)
                ),
            );
            line(
                "feasibility",
                if s.at_feasibility_boundary {
                    "boundary (tangency, no slack)".to_string()
                } else {
                    "interior".to_string()
                },
            );
            for w in r.curve.warnings() {
                let _ = writeln!(out, "warning: {w}");
            }
            out
        }
    };
    Ok(Output::ok(body))
}

pub fn table(args: &TableArgs) -> Result<Output, CliError> {
    let table = if let Some(n) = args.paper_table {
        let which = PaperTable::from_number(n).ok_or_else(|| {
            CliError::Usage(format!("no reproducible table {n}; choose 1, 3 or 4"))
        })?;
        let mut t = paper_table(which);
        if let Some(places) = args.round {
            t.rounding = Rounding::uniform(places);
        }
        t
    } else {
        let r = resolve(&args.common)?;
        let grid = match (&args.grid, &r.scenario.sweep) {
            (Some(g), _) => parse_grid(g)?,
            (None, Some(s)) => s.values()?,
            (None, None) => {
                return Err(CliError::Usage(
                    "no grid: pass --grid or a scenario with a sweep".into(),
                ))
            }
        };
        let options = SweepOptions {
            rounding: Rounding::uniform(args.round.unwrap_or(3)),
            vc_a: r.scenario.vc_a,
            extended: r.scaled || r.scenario.vc_a > 0.0,
        };
        sweep(&r.curve, &grid, &options)
    };
    let body = match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => table.to_csv(),
        Format::Text => table.to_text(),
        Format::Json => to_json(&table),
    };
    Ok(Output::ok(body))
}

#[derive(Serialize)]
struct CurveRow {
    f: f64,
    nar: f64,
    nmr: f64,
    hyperbola: f64,
    solution: bool,
}

pub fn curve(args: &CurveArgs) -> Result<Output, CliError> {
    if args.samples < 2 {
        return Err(CliError::Usage(format!(
            "--samples must be at least 2, got {}",
            args.samples
        )));
    }
    let r = resolve(&args.common)?;
    let s = solve_schedule(&request(&r))?;
    let rows = curve_rows(&r.curve, &s, args.samples);
    let body = match args.common.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv | Format::Text => {
            let mut out = String::from("f,nar,nmr,hyperbola,solution\n");
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    row.f,
                    row.nar,
                    row.nmr,
                    row.hyperbola,
                    u8::from(row.solution)
                );
            }
            out
        }
    };
    Ok(Output::ok(body))
}

/// Samples on `(0, q]` with the solved point `(f, t)` merged in; its
/// hyperbola value is the transfer price.
fn curve_rows(curve: &CalibratedCurve, s: &Schedule, samples: usize) -> Vec<CurveRow> {
    let (p, q) = (curve.p(), curve.q());
    let hyperbola = |f: f64| s.c_effective * (p - s.vc_a) * q / f + s.vc_a;
    let row = |f: f64, solution: bool| CurveRow {
        f,
        nar: curve.nar(f),
        nmr: curve.nmr(f),
        hyperbola: if solution { s.t } else { hyperbola(f) },
        solution,
    };
    let mut rows: Vec<CurveRow> = (1..=samples)
        .map(|i| row(q * i as f64 / samples as f64, false))
        .collect();
    match rows.iter().position(|r| r.f >= s.f) {
        Some(i) if rows[i].f == s.f => rows[i] = row(s.f, true),
        Some(i) => rows.insert(i, row(s.f, true)),
        None => rows.push(row(s.f, true)),
    }
    rows
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    value: f64,
    limit: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ValidateReport {
    family: String,
    p: f64,
    q: f64,
    c_max: f64,
    c_real: f64,
    vc_a: f64,
    feasible: bool,
    schedule: Option<Schedule>,
    problem: Option<String>,
    warnings: Vec<String>,
    checks: Vec<Check>,
}

pub fn validate(args: &CommonArgs) -> Result<Output, CliError> {
    let r = resolve(args)?;
    let curve = &r.curve;
    let (p, q) = (curve.p(), curve.q());
    let peak = feasibility_peak(curve);

    let mut checks = vec![Check {
        name: "nmr_at_optimum",
        value: curve.nmr(q).abs(),
        limit: 1e-9 * p,
        pass: curve.nmr(q).abs() < 1e-9 * p,
    }];
    let mut warnings: Vec<String> = curve.warnings().iter().map(|w| w.to_string()).collect();

    let (schedule, problem) = match solve_schedule(&request(&r)) {
        Ok(s) => {
            let vc = s.vc_a;
            let rect = ((s.t - vc) * s.f - s.c_effective * (p - vc) * q).abs();
            let rect_limit = 1e-9 * (p * q).max(f64::MIN_POSITIVE);
            checks.push(Check {
                name: "rectangle",
                value: rect,
                limit: rect_limit,
                pass: rect <= rect_limit,
            });
            // Price net of variable cost, rescaled to the dimensionless model,
            // sits on NMR at f.
            let tangency = ((s.t - vc) * p / (p - vc) - curve.nmr(s.f)).abs();
            checks.push(Check {
                name: "tangency",
                value: tangency,
                limit: 1e-9 * p,
                pass: tangency < 1e-9 * p,
            });
            if s.at_feasibility_boundary {
                warnings.push("AT_FEASIBILITY_BOUNDARY: c_effective equals c_max; no slack".into());
            }
            (Some(s), None)
        }
        Err(e) => {
            warnings.push(format!("{}: {e}", e.code()));
            (None, Some(e.to_string()))
        }
    };
    for c in checks.iter().filter(|c| !c.pass) {
        warnings.push(format!(
            "SELF_TEST_FAILED: {} = {:e} exceeds {:e}",
            c.name, c.value, c.limit
        ));
    }

    let report = ValidateReport {
        family: curve.family().to_string(),
        p,
        q,
        c_max: peak.c_max,
        c_real: r.scenario.c_real,
        vc_a: r.scenario.vc_a,
        feasible: schedule.is_some(),
        schedule,
        problem,
        warnings,
        checks,
    };
    let status = if report.warnings.is_empty() {
        Status::Ok
    } else {
        Status::Warnings
    };
    let body = match args.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Text | Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "family              {}", report.family);
            let _ = writeln!(out, "p                   {}", format_fixed(p, 2));
            let _ = writeln!(out, "q                   {}", format_fixed(q, 2));
            let _ = writeln!(
                out,
                "c_max               {} (at x = {})",
                format_fixed(peak.c_max, 3),
                format_fixed(peak.x, 3)
            );
            let verdict = match (&report.schedule, &report.problem) {
                (Some(s), _) => format!(
                    "feasible (c_effective = {})",
                    format_fixed(s.c_effective, 3)
                ),
                (None, Some(p)) => format!("not feasible: {p}"),
                (None, None) => unreachable!(),
            };
            let _ = writeln!(
                out,
                "c_real              {} {verdict}",
                format_fixed(report.c_real, 3)
            );
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "check {:<16}{} ({:.1e})",
                    c.name,
                    if c.pass { "ok" } else { "FAIL" },
                    c.value
                );
            }
            for w in &report.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            let _ = writeln!(
                out,
                "status              {}",
                if status == Status::Ok {
                    "ok"
                } else {
                    "warnings"
                }
            );
            out
        }
    };
    Ok(Output { body, status })
}
