//! Net-average-revenue (NAR) curves and their calibration to the optimum.
//!
//! Every curve is reduced to the pair `(p, q)`: `q` is the output where net
//! marginal revenue (NMR) vanishes and `p` is the NAR there. The closed-form
//! families are then evaluated in the normalized variable `u = f / q`:
//!
//! | family      | NAR(f)              | NMR(f)                       |
//! |-------------|---------------------|------------------------------|
//! | linear      | `p(2 - u)`          | `2p(1 - u)`                  |
//! | quadratic   | `p(1.5 - 0.5u²)`    | `1.5p(1 - u²)`               |
//! | exponential | `p·e^(1-u)`         | `p·e^(1-u)(1 - u)`           |
//!
//! Sampled curves are interpolated and their NMR is formed symbolically.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{positive, Error, Result};
use crate::interpolation::{lagrange_nar, Interpolant, Polynomial};
use crate::numeric::bisect;

/// Grid cells scanned when locating the optimum of a sampled curve.
pub const OPTIMUM_SCAN_STEPS: usize = 1024;
/// Samples used for the NAR positivity/monotonicity check on `(0, q]`.
pub const VALIDATION_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Linear,
    Quadratic,
    Exponential,
    Points,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Linear => "linear",
            Family::Quadratic => "quadratic",
            Family::Exponential => "exponential",
            Family::Points => "points",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Family::Linear),
            "quadratic" => Ok(Family::Quadratic),
            "exponential" => Ok(Family::Exponential),
            "points" => Ok(Family::Points),
            other => Err(format!(
                "unknown family `{other}` (expected linear, quadratic, exponential or points)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `NAR(f) = a - b·f`
    Linear,
    /// `NAR(f) = a - b·f²`
    Quadratic,
    /// `NAR(f) = a·e^(-f/b)`
    Exponential,
}

impl From<ClosedForm> for Family {
    fn from(c: ClosedForm) -> Self {
        match c {
            ClosedForm::Linear => Family::Linear,
            ClosedForm::Quadratic => Family::Quadratic,
            ClosedForm::Exponential => Family::Exponential,
        }
    }
}

impl TryFrom<Family> for ClosedForm {
    type Error = Error;

    fn try_from(f: Family) -> Result<Self> {
        match f {
            Family::Linear => Ok(ClosedForm::Linear),
            Family::Quadratic => Ok(ClosedForm::Quadratic),
            Family::Exponential => Ok(ClosedForm::Exponential),
            Family::Points => Err(Error::MalformedCurve(
                "the points family has no closed form".into(),
            )),
        }
    }
}

/// How a closed-form curve is scaled: by its raw coefficients or directly by
/// its optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Coefficients { a: f64, b: f64 },
    Optimum { p: f64, q: f64 },
}

/// User-facing description of a NAR curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveSpecRepr", into = "CurveSpecRepr")]
pub enum CurveSpec {
    Closed {
        family: ClosedForm,
        scale: Scale,
    },
    /// Samples `(f, nar)`.
    Points(Vec<(f64, f64)>),
}

impl CurveSpec {
    pub fn linear(a: f64, b: f64) -> Self {
        Self::closed(ClosedForm::Linear, a, b)
    }

    pub fn quadratic(a: f64, b: f64) -> Self {
        Self::closed(ClosedForm::Quadratic, a, b)
    }

    pub fn exponential(a: f64, b: f64) -> Self {
        Self::closed(ClosedForm::Exponential, a, b)
    }

    pub fn closed(family: ClosedForm, a: f64, b: f64) -> Self {
        CurveSpec::Closed {
            family,
            scale: Scale::Coefficients { a, b },
        }
    }

    pub fn from_optimum(family: ClosedForm, p: f64, q: f64) -> Self {
        CurveSpec::Closed {
            family,
            scale: Scale::Optimum { p, q },
        }
    }

    pub fn points(points: Vec<(f64, f64)>) -> Self {
        CurveSpec::Points(points)
    }

    pub fn family(&self) -> Family {
        match self {
            CurveSpec::Closed { family, .. } => (*family).into(),
            CurveSpec::Points(_) => Family::Points,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CurveSpecRepr {
    family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<[f64; 2]>>,
}

impl TryFrom<CurveSpecRepr> for CurveSpec {
    type Error = Error;

    fn try_from(r: CurveSpecRepr) -> Result<Self> {
        let malformed = |msg: &str| Err(Error::MalformedCurve(msg.to_string()));
        match r.family {
            Family::Points => {
                if r.a.is_some() || r.b.is_some() || r.p.is_some() || r.q.is_some() {
                    return malformed("points curves take only a `points` list");
                }
                match r.points {
                    Some(pts) => Ok(CurveSpec::Points(
                        pts.into_iter().map(|[f, v]| (f, v)).collect(),
                    )),
                    None => malformed("points family requires a `points` list"),
                }
            }
            family => {
                let family = ClosedForm::try_from(family)?;
                if r.points.is_some() {
                    return malformed("closed-form families do not take `points`");
                }
                match (r.a, r.b, r.p, r.q) {
                    (Some(a), Some(b), None, None) => Ok(CurveSpec::closed(family, a, b)),
                    (None, None, Some(p), Some(q)) => Ok(CurveSpec::from_optimum(family, p, q)),
                    _ => malformed("closed-form families need exactly one of (a, b) or (p, q)"),
                }
            }
        }
    }
}

impl From<CurveSpec> for CurveSpecRepr {
    fn from(spec: CurveSpec) -> Self {
        let mut r = CurveSpecRepr {
            family: spec.family(),
            a: None,
            b: None,
            p: None,
            q: None,
            points: None,
        };
        match spec {
            CurveSpec::Closed {
                scale: Scale::Coefficients { a, b },
                ..
            } => {
                r.a = Some(a);
                r.b = Some(b);
            }
            CurveSpec::Closed {
                scale: Scale::Optimum { p, q },
                ..
            } => {
                r.p = Some(p);
                r.q = Some(q);
            }
            CurveSpec::Points(pts) => {
                r.points = Some(pts.into_iter().map(|(f, v)| [f, v]).collect())
            }
        }
        r
    }
}

/// Economic-validity findings on a calibrated curve. Not fatal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveWarning {
    /// NAR rises somewhere on `(0, q]`.
    NotDecreasing { f: f64 },
    /// NAR is zero or negative somewhere on `(0, q]`.
    NonPositive { f: f64 },
}

impl fmt::Display for CurveWarning {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveWarning::NotDecreasing { f } => {
                write!(
                    fmt,
                    "NOT_DECREASING: net average revenue increases near f = {f:.6}"
                )
            }
            CurveWarning::NonPositive { f } => {
                write!(
                    fmt,
                    "NON_POSITIVE: net average revenue is not positive at f = {f:.6}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Linear,
    Quadratic,
    Exponential,
    Sampled {
        nar: Interpolant,
        nmr: Polynomial,
        max_f: f64,
    },
}

/// A curve normalized to its optimum `(p, q)`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibratedCurve {
    p: f64,
    q: f64,
    shape: Shape,
    warnings: Vec<CurveWarning>,
}

impl CalibratedCurve {
    /// Closed-form curve given directly by its optimum.
    pub fn from_optimum(family: ClosedForm, p: f64, q: f64) -> Result<Self> {
        let p = positive("p", p)?;
        let q = positive("q", q)?;
        let shape = match family {
            ClosedForm::Linear => Shape::Linear,
            ClosedForm::Quadratic => Shape::Quadratic,
            ClosedForm::Exponential => Shape::Exponential,
        };
        Ok(CalibratedCurve {
            p,
            q,
            shape,
            warnings: Vec::new(),
        })
    }

    /// NAR at the optimum.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Optimal output.
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn family(&self) -> Family {
        match self.shape {
            Shape::Linear => Family::Linear,
            Shape::Quadratic => Family::Quadratic,
            Shape::Exponential => Family::Exponential,
            Shape::Sampled { .. } => Family::Points,
        }
    }

    pub fn warnings(&self) -> &[CurveWarning] {
        &self.warnings
    }

    /// Interpolant of a sampled curve; `None` for closed forms.
    pub fn interpolant(&self) -> Option<&Interpolant> {
        match &self.shape {
            Shape::Sampled { nar, .. } => Some(nar),
            _ => None,
        }
    }

    /// Net average revenue at output `f`.
    pub fn nar(&self, f: f64) -> f64 {
        let u = f / self.q;
        match &self.shape {
            Shape::Linear => self.p * (2.0 - u),
            Shape::Quadratic => self.p * (1.5 - 0.5 * u * u),
            Shape::Exponential => self.p * (1.0 - u).exp(),
            Shape::Sampled { nar, .. } => nar.eval(f),
        }
    }

    /// Net marginal revenue at output `f`: the derivative of `f·nar(f)`.
    pub fn nmr(&self, f: f64) -> f64 {
        let u = f / self.q;
        match &self.shape {
            Shape::Linear => 2.0 * self.p * (1.0 - u),
            Shape::Quadratic => 1.5 * self.p * (1.0 - u * u),
            Shape::Exponential => self.p * (1.0 - u).exp() * (1.0 - u),
            Shape::Sampled { nmr, .. } => nmr.eval(f),
        }
    }

    /// Total revenue `f·nar(f)`.
    pub fn total_revenue(&self, f: f64) -> f64 {
        f * self.nar(f)
    }

    fn validate(&mut self) {
        let mut prev = self.nar(0.0);
        let tol = 1e-9 * self.p;
        let mut rising = None;
        let mut non_positive = None;
        for i in 1..=VALIDATION_SAMPLES {
            let f = self.q * i as f64 / VALIDATION_SAMPLES as f64;
            let v = self.nar(f);
            if non_positive.is_none() && v <= 0.0 {
                non_positive = Some(f);
            }
            if rising.is_none() && v - prev > tol {
                rising = Some(f);
            }
            prev = v;
        }
        if let Some(f) = rising {
            self.warnings.push(CurveWarning::NotDecreasing { f });
        }
        if let Some(f) = non_positive {
            self.warnings.push(CurveWarning::NonPositive { f });
        }
    }
}

/// `d(f·nar(f))/df` for a polynomial NAR: `Σ cᵢfⁱ ↦ Σ (i+1)cᵢfⁱ`.
pub fn nmr_from_nar(nar: &Polynomial) -> Polynomial {
    Polynomial::new(
        nar.coefficients()
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + 1) as f64 * c)
            .collect(),
    )
}

/// Normalizes a curve description to its optimum.
pub fn calibrate(spec: &CurveSpec) -> Result<CalibratedCurve> {
    match *spec {
        CurveSpec::Closed { family, scale } => {
            let (p, q) = match scale {
                Scale::Optimum { p, q } => (p, q),
                Scale::Coefficients { a, b } => {
                    let a = positive("a", a)?;
                    let b = positive("b", b)?;
                    match family {
                        ClosedForm::Linear => (a / 2.0, a / (2.0 * b)),
                        ClosedForm::Quadratic => (2.0 * a / 3.0, (a / (3.0 * b)).sqrt()),
                        ClosedForm::Exponential => (a / std::f64::consts::E, b),
                    }
                }
            };
            CalibratedCurve::from_optimum(family, p, q)
        }
        CurveSpec::Points(ref points) => calibrate_points(points),
    }
}

fn calibrate_points(points: &[(f64, f64)]) -> Result<CalibratedCurve> {
    if let Some(&(f, _)) = points.iter().find(|(f, _)| *f < 0.0) {
        return Err(Error::InvalidParameter {
            name: "f",
            value: f,
            reason: "sample abscissae must be non-negative",
        });
    }
    let nar = lagrange_nar(points)?;
    let nmr = nmr_from_nar(nar.polynomial());
    let max_f = *nar.nodes().last().expect("at least three nodes");
    if max_f <= 0.0 {
        return Err(Error::NoOptimum { max_f });
    }

    // Last + to non-positive transition of NMR on the grid.
    let step = max_f / OPTIMUM_SCAN_STEPS as f64;
    let mut bracket = None;
    let mut prev = nmr.eval(0.0);
    for i in 1..=OPTIMUM_SCAN_STEPS {
        let f = step * i as f64;
        let v = nmr.eval(f);
        if prev > 0.0 && v <= 0.0 {
            bracket = Some((f - step, f));
        }
        prev = v;
    }
    let (lo, hi) = bracket.ok_or(Error::NoOptimum { max_f })?;
    let q = bisect(|f| nmr.eval(f), lo, hi, 0.0, 200);
    let p = nar.eval(q);
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "net average revenue at the revenue maximum must be positive",
        });
    }

    let mut curve = CalibratedCurve {
        p,
        q,
        shape: Shape::Sampled { nar, nmr, max_f },
        warnings: Vec::new(),
    };
    curve.validate();
    Ok(curve)
}
