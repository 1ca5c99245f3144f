//! Look-angle shaping with a bounded hyperbolic-tangent profile.
//!
//! The commanded look angle `λ = χ − γ` is the solution of
//!
//! ```text
//! cos λ − a sin λ = −tanh(k_G e),      a = r'(γ) / d,   e = d − r(γ)
//! ```
//!
//! Because `|tanh| < 1` and `√(1 + a²) ≥ 1` a real solution exists for every
//! `(e, a)`. Substituting it into the polar kinematics collapses the radial error
//! dynamics to `ė = −V_g tanh(k_G e)`, whose solution and tube-entry time are
//! known in closed form.

use core::f64::consts::LN_2;

use libm::{acos, asinh, atan, exp, fabs, log, log1p, sinh, sqrt, tanh};

use crate::angle::wrap;
use crate::curve::StandoffCurve;
use crate::error::positive;
use crate::planar::EngagementState;
use crate::GuidanceError;

/// Beyond this argument the `ln cosh` / `ln sinh` evaluations switch to their
/// asymptotic forms.
const ASYMPTOTIC_ARG: f64 = 20.0;
const ACOS_MARGIN: f64 = 1e-15;

/// Orbit sense. `Ccw` gives `λ = +π/2` on the curve, so `γ̇ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitDirection {
    Ccw,
    Cw,
}

impl OrbitDirection {
    pub fn sign(self) -> f64 {
        match self {
            Self::Ccw => 1.0,
            Self::Cw => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidanceParams {
    /// Shaping gain `k_G` [1/m].
    pub gain: f64,
    pub direction: OrbitDirection,
    /// Ground speed `V_g` [m/s].
    pub ground_speed: f64,
    /// Turn-rate limit `ω_max` [rad/s].
    pub max_turn_rate: f64,
    /// Settling tube half-width `ε` [m].
    pub tube: f64,
}

impl GuidanceParams {
    pub fn new(
        gain: f64,
        direction: OrbitDirection,
        ground_speed: f64,
        max_turn_rate: f64,
        tube: f64,
    ) -> Result<Self, GuidanceError> {
        let params = Self {
            gain,
            direction,
            ground_speed,
            max_turn_rate,
            tube,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), GuidanceError> {
        positive("k_G", self.gain)?;
        positive("ground_speed", self.ground_speed)?;
        positive("max_turn_rate", self.max_turn_rate)?;
        if !(self.tube > 0.0 && self.tube.is_finite()) {
            return Err(GuidanceError::InvalidTube(self.tube));
        }
        Ok(())
    }

    pub fn with_gain(self, gain: f64) -> Self {
        Self { gain, ..self }
    }
}

/// Closed-form solution of the shaping constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LookAngleSolution {
    /// Commanded look angle, wrapped to `(-π, π]`.
    pub look_angle: f64,
    /// Phase shift `atan(a)`.
    pub phase: f64,
    /// Principal angle in `[0, π]`.
    pub principal: f64,
    /// `|cos λ − a sin λ + tanh(k_G e)|`.
    pub residual: f64,
}

/// `σ(e) = −tanh(k_G e)`.
pub fn shaping(error: f64, gain: f64) -> f64 {
    -tanh(gain * error)
}

/// Solves `cos λ − a sin λ = −tanh(k_G e)` on the branch selected by the orbit
/// direction. Total for every finite `(e, a)`.
pub fn solve_look_angle(error: f64, coupling: f64, params: &GuidanceParams) -> LookAngleSolution {
    let shaped = tanh(params.gain * error);
    let phase = atan(coupling);
    let arg = (-shaped / sqrt(1.0 + coupling * coupling)).clamp(-1.0 + ACOS_MARGIN, 1.0 - ACOS_MARGIN);
    let principal = acos(arg);
    let look_angle = wrap(-phase + params.direction.sign() * principal);
    let residual = fabs(libm::cos(look_angle) - coupling * libm::sin(look_angle) + shaped);
    LookAngleSolution {
        look_angle,
        phase,
        principal,
        residual,
    }
}

/// Global bound on `|dλ/de|`.
pub fn look_angle_slope_bound(coupling: f64, gain: f64) -> f64 {
    gain / sqrt(1.0 + coupling * coupling)
}

/// Reduced radial-error dynamics `ė = −V_g tanh(k_G e)`.
pub fn error_rate(error: f64, params: &GuidanceParams) -> f64 {
    -params.ground_speed * tanh(params.gain * error)
}

/// Lyapunov function `V(e) = ln(cosh(k_G e)) / k_G`.
pub fn lyapunov_value(error: f64, gain: f64) -> f64 {
    ln_cosh(gain * error) / gain
}

/// Closed-form time for `|e|` to first reach the tube `ε`.
pub fn tube_entry_time(initial_error: f64, params: &GuidanceParams) -> Result<f64, GuidanceError> {
    let eps = params.tube;
    if !(eps > 0.0) {
        return Err(GuidanceError::InvalidTube(eps));
    }
    if fabs(initial_error) <= eps {
        return Ok(0.0);
    }
    let k = params.gain;
    Ok((ln_sinh(k * fabs(initial_error)) - ln_sinh(k * eps)) / (k * params.ground_speed))
}

/// Exact solution of the reduced dynamics:
/// `sinh(k_G e(t)) = sinh(k_G e_0) exp(−k_G V_g t)`.
pub fn error_trajectory_oracle(initial_error: f64, t: f64, params: &GuidanceParams) -> f64 {
    if initial_error == 0.0 || t <= 0.0 {
        return initial_error;
    }
    let k = params.gain;
    let log_sinh = ln_sinh(k * fabs(initial_error)) - k * params.ground_speed * t;
    let magnitude = if log_sinh > ASYMPTOTIC_ARG {
        // asinh(z) = ln(2z) + O(z^-2)
        log_sinh + LN_2
    } else {
        asinh(exp(log_sinh))
    };
    magnitude.copysign(initial_error) / k
}

/// Commanded course `χ_d = γ + λ_d`, wrapped.
pub fn commanded_course(
    state: &EngagementState,
    curve: &StandoffCurve,
    params: &GuidanceParams,
) -> Result<f64, GuidanceError> {
    let error = state.range - curve.radius_at(state.los);
    let coupling = curve.coupling(state.los, state.range)?;
    let sol = solve_look_angle(error, coupling, params);
    Ok(wrap(state.los + sol.look_angle))
}

/// `ln cosh x` without overflow; accurate for tiny `x` as well.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let ax = fabs(x);
    if ax > ASYMPTOTIC_ARG {
        ax - LN_2 + log1p(exp(-2.0 * ax))
    } else {
        // cosh x − 1 = 2 sinh²(x/2)
        let s = sinh(0.5 * ax);
        log1p(2.0 * s * s)
    }
}

/// `ln sinh x` for `x > 0` without overflow.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    if x > ASYMPTOTIC_ARG {
        x - LN_2 + log1p(-exp(-2.0 * x))
    } else {
        log(sinh(x))
    }
}
