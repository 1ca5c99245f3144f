use thiserror::Error;

/// Errors raised by guidance-law evaluation and parameter validation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GuidanceError {
    #[error("non-positive range d = {0} m (vehicle at the curve centre)")]
    NonPositiveRange(f64),
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("tube half-width must be positive, got {0}")]
    InvalidTube(f64),
    #[error("arcsine law infeasible: |k_D * e| = {0} >= 1")]
    FeasibilityViolation(f64),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),
}

/// Errors raised while integrating a simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("range collapsed to {range} m at t = {t} s")]
    RangeCollapse { t: f64, range: f64 },
    #[error("non-finite state at t = {t} s")]
    NonFinite { t: f64 },
    #[error("guidance failure at t = {t} s: {source}")]
    Guidance { t: f64, source: GuidanceError },
    #[error("invalid simulation setting `{name}`: {reason}")]
    InvalidSetting {
        name: &'static str,
        reason: &'static str,
    },
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, GuidanceError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(GuidanceError::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}
