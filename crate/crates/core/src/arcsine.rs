//! Arcsine look-angle baseline, `λ = π/2 + asin(k_D e)`.
//!
//! The law is only defined while `|k_D e| < 1`, which limits the admissible gain
//! by the largest error the vehicle will see. [`match_arcsine_gain`] picks `k_D`
//! so that the baseline and the tanh law start with the same heading.

use core::f64::consts::FRAC_PI_2;

use libm::{acos, asin, fabs, sin, tanh};

use crate::curve::StandoffCurve;
use crate::glass::OrbitDirection;
use crate::planar::EngagementState;
use crate::GuidanceError;

/// Which error signal feeds the arcsine law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcsineError {
    /// Raw range error `e = d − r(γ)` [m].
    Raw,
    /// Normalized error `e_D = −(1 − r(γ)/d)`, dimensionless.
    Normalized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcsineParams {
    /// `k_D`; units are 1/m for [`ArcsineError::Raw`], dimensionless otherwise.
    pub gain: f64,
    pub error: ArcsineError,
    pub direction: OrbitDirection,
}

impl ArcsineParams {
    /// Error signal at the given geometry. The standoff radius is taken from
    /// the curve so both laws track the same path.
    pub fn error_at(&self, state: &EngagementState, curve: &StandoffCurve) -> Result<f64, GuidanceError> {
        let desired = curve.radius_at(state.los);
        match self.error {
            ArcsineError::Raw => Ok(state.range - desired),
            ArcsineError::Normalized => normalized_error(state.range, desired),
        }
    }
}

/// `π/2 + asin(k_D e)`; fails outside the feasible set `|k_D e| < 1`.
pub fn arcsine_look_angle(error: f64, params: &ArcsineParams) -> Result<f64, GuidanceError> {
    let arg = params.gain * error;
    if !(fabs(arg) < 1.0) {
        return Err(GuidanceError::FeasibilityViolation(fabs(arg)));
    }
    Ok(FRAC_PI_2 + asin(arg))
}

/// `e_D = −(1 − r_d/d)`.
pub fn normalized_error(range: f64, standoff_radius: f64) -> Result<f64, GuidanceError> {
    if !(range > 0.0) {
        return Err(GuidanceError::NonPositiveRange(range));
    }
    Ok(-(1.0 - standoff_radius / range))
}

/// Arcsine gain that reproduces the tanh law's initial look angle on a circle,
/// `k_D = sin(σ_G(0) − π/2) / e_{0,D}` with `cos σ_G(0) = −tanh(k_G (d_0 − r_d))`.
pub fn match_arcsine_gain(initial_range: f64, standoff_radius: f64, shaping_gain: f64) -> Result<f64, GuidanceError> {
    if !(initial_range > standoff_radius) {
        return Err(GuidanceError::InvalidGeometry(
            "gain matching requires an outside start (d_0 > r_d)",
        ));
    }
    let initial_look = acos(-tanh(shaping_gain * (initial_range - standoff_radius)));
    let initial_error = normalized_error(initial_range, standoff_radius)?;
    Ok(sin(initial_look - FRAC_PI_2) / initial_error)
}

/// Commanded course `γ + s·(π/2 + asin(k_D e))`, mirrored for clockwise orbits.
pub fn arcsine_commanded_course(
    state: &EngagementState,
    curve: &StandoffCurve,
    params: &ArcsineParams,
) -> Result<f64, GuidanceError> {
    let error = params.error_at(state, curve)?;
    let look = arcsine_look_angle(error, params)?;
    Ok(crate::angle::wrap(state.los + params.direction.sign() * look))
}
