use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("sampled curve needs between {min} and {max} points, got {got}")]
    PointCount { got: usize, min: usize, max: usize },

    #[error("duplicate abscissa f = {0} in sampled curve")]
    DuplicateAbscissa(f64),

    #[error("marginal revenue has no sign change on (0, {max_f}]; the sampled curve has no interior revenue maximum")]
    NoOptimum { max_f: f64 },

    #[error("target contribution c = {c} exceeds the feasible maximum {c_max}")]
    CExceedsFeasible { c: f64, c_max: f64 },

    #[error("target contribution {c_real} of p = {p} does not recover variable cost {vc_a}")]
    NegativeEffectiveContribution { c_real: f64, p: f64, vc_a: f64 },

    #[error("variable cost {vc_a} must be below the optimum net average revenue p = {p}")]
    VariableCostTooHigh { vc_a: f64, p: f64 },

    #[error("malformed curve description: {0}")]
    MalformedCurve(String),
}

impl Error {
    /// Stable upper-case identifier, used as the prefix of CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "INVALID_PARAMETER",
            Error::PointCount { .. } => "POINT_COUNT",
            Error::DuplicateAbscissa(_) => "DUPLICATE_ABSCISSA",
            Error::NoOptimum { .. } => "NO_OPTIMUM",
            Error::CExceedsFeasible { .. } => "C_EXCEEDS_FEASIBLE",
            Error::NegativeEffectiveContribution { .. } => "NEGATIVE_EFFECTIVE_CONTRIBUTION",
            Error::VariableCostTooHigh { .. } => "VARIABLE_COST_TOO_HIGH",
            Error::MalformedCurve(_) => "MALFORMED_CURVE",
        }
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be a finite positive number",
        })
    }
}
