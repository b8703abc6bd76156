use std::path::Path;

use serde::{Deserialize, Serialize};
use tpschedule::{calibrate, CalibratedCurve, ClosedForm, CurveSpec, Family};

use crate::args::CommonArgs;
use crate::error::CliError;

/// Scenario file contents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub curve: CurveSpec,
    #[serde(default)]
    pub c_real: f64,
    #[serde(default)]
    pub vc_a: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub currency_label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepSpec {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl SweepSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        match *self {
            SweepSpec::Values(ref v) => Ok(v.clone()),
            SweepSpec::Range { start, stop, step } => {
                if step.is_nan() || step <= 0.0 {
                    return Err(CliError::Malformed(format!(
                        "sweep range step must be positive, got {step}"
                    )));
                }
                range(start, stop, step)
            }
        }
    }
}

const MAX_GRID_POINTS: usize = 100_000;

/// Inclusive arithmetic range; `stop` is kept when it lies on the grid.
pub fn range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step == 0.0 {
        return Err(CliError::Usage(format!(
            "invalid grid {start}:{stop}:{step}"
        )));
    }
    let span = (stop - start) / step;
    if span < -1e-9 {
        return Err(CliError::Usage(format!(
            "grid step {step} does not lead from {start} to {stop}"
        )));
    }
    let count = (span + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(CliError::Usage(format!(
            "grid has more than {MAX_GRID_POINTS} points"
        )));
    }
    Ok((0..count).map(|i| clean(start + step * i as f64)).collect())
}

// Strips accumulated binary noise such as 0.15000000000000002.
fn clean(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// `start:stop:step` or a comma-separated list.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("malformed grid value `{s}`")))
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!(
                "grid range must be start:stop:step, got `{text}`"
            )));
        }
        range(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    } else {
        text.split(',').map(num).collect()
    }
}

pub fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

/// Scenario file merged with command-line overrides.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub scenario: Scenario,
    pub curve: CalibratedCurve,
    /// True when the caller gave the curve a concrete scale (a scenario file
    /// or explicit `--p`/`--q`).
    pub scaled: bool,
}

pub fn resolve(args: &CommonArgs) -> Result<Resolved, CliError> {
    let file = args.scenario.as_deref().map(load).transpose()?;
    let file_curve = file.as_ref().map(|s| calibrate(&s.curve)).transpose()?;

    let overrides = args.family.is_some() || args.p.is_some() || args.q.is_some();
    let spec = if overrides {
        let family = args
            .family
            .or(file.as_ref().map(|s| s.curve.family()))
            .ok_or_else(|| CliError::Usage("--p/--q need --family or a scenario".into()))?;
        match family {
            Family::Points => match &file {
                Some(s) if s.curve.family() == Family::Points && args.p.is_none() && args.q.is_none() => {
                    s.curve.clone()
                }
                _ => {
                    return Err(CliError::Usage(
                        "the points family needs a scenario file with sample points and takes no --p/--q"
                            .into(),
                    ))
                }
            },
            closed => {
                let family = ClosedForm::try_from(closed)?;
                let p = args.p.or(file_curve.as_ref().map(|c| c.p())).unwrap_or(1.0);
                let q = args.q.or(file_curve.as_ref().map(|c| c.q())).unwrap_or(1.0);
                CurveSpec::from_optimum(family, p, q)
            }
        }
    } else {
        match &file {
            Some(s) => s.curve.clone(),
            None => {
                return Err(CliError::Usage(
                    "no curve given: pass --scenario <file> or --family".into(),
                ))
            }
        }
    };

    let curve = calibrate(&spec)?;
    let base = file.clone();
    let scenario = Scenario {
        curve: spec,
        c_real: args
            .c_real
            .or(base.as_ref().map(|s| s.c_real))
            .unwrap_or(0.0),
        vc_a: args.vc_a.or(base.as_ref().map(|s| s.vc_a)).unwrap_or(0.0),
        currency_label: base.as_ref().and_then(|s| s.currency_label.clone()),
        sweep: base.and_then(|s| s.sweep),
    };
    Ok(Resolved {
        scenario,
        curve,
        scaled: file.is_some() || args.p.is_some() || args.q.is_some(),
    })
}
