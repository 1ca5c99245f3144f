//! Planar engagement simulation around an origin-centred standoff curve.
//!
//! Position is integrated in cartesian form (`ẋ = V cos χ`, `ẏ = V sin χ`) with
//! fixed-step RK4 and the polar pair `(d, γ)` is refreshed after every step. In
//! the ideal channel the course is the guidance command evaluated inside every
//! RK4 stage; the first-order channel integrates
//! `χ̇ = sat(k_χ wrap(χ_d − χ), ω_max)` jointly with the position.

use alloc::vec::Vec;

use libm::{atan2, cos, fabs, hypot, sin};

use crate::angle::wrap;
use crate::arcsine::{arcsine_commanded_course, ArcsineParams};
use crate::curve::StandoffCurve;
use crate::glass::{commanded_course, GuidanceParams};
use crate::integrate::{rk4_step, try_rk4_step};
use crate::{GuidanceError, SimError};

/// Below this range the polar description is treated as singular.
pub const MIN_RANGE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngagementState {
    pub x: f64,
    pub y: f64,
    /// Range to the origin `d`.
    pub range: f64,
    /// Line-of-sight angle `γ = atan2(y, x)`.
    pub los: f64,
    /// Course `χ`.
    pub course: f64,
    pub t: f64,
}

impl EngagementState {
    pub fn from_position(x: f64, y: f64, course: f64) -> Self {
        Self::at(x, y, course, 0.0)
    }

    pub fn at(x: f64, y: f64, course: f64, t: f64) -> Self {
        Self {
            x,
            y,
            range: hypot(x, y),
            los: atan2(y, x),
            course: wrap(course),
            t,
        }
    }

    /// Look angle `λ = χ − γ`.
    pub fn look_angle(&self) -> f64 {
        wrap(self.course - self.los)
    }
}

/// Guidance law driving a planar run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GuidanceLaw {
    Glass(GuidanceParams),
    Arcsine(ArcsineParams),
}

impl GuidanceLaw {
    pub fn commanded_course(&self, state: &EngagementState, curve: &StandoffCurve) -> Result<f64, GuidanceError> {
        match self {
            Self::Glass(p) => commanded_course(state, curve, p),
            Self::Arcsine(p) => arcsine_commanded_course(state, curve, p),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Glass(_) => "glass",
            Self::Arcsine(_) => "arcsine",
        }
    }

    pub fn gain(&self) -> f64 {
        match self {
            Self::Glass(p) => p.gain,
            Self::Arcsine(p) => p.gain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CourseChannel {
    /// `χ = χ_d` at all times.
    Ideal,
    /// `χ̇ = sat(k_χ wrap(χ_d − χ), ω_max)`.
    FirstOrder { gain: f64, max_rate: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialCourse {
    /// Start aligned with the guidance command.
    Commanded,
    /// Explicit initial course [rad].
    Fixed(f64),
}

/// Everything needed for one planar run.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub curve: StandoffCurve,
    pub law: GuidanceLaw,
    pub channel: CourseChannel,
    /// Ground speed `V_g` [m/s].
    pub ground_speed: f64,
    /// Tube half-width `ε` used for entry and dwell detection [m].
    pub tube: f64,
    pub initial_position: (f64, f64),
    pub initial_course: InitialCourse,
    pub dt: f64,
    pub t_final: f64,
    /// Stop once `|e| ≤ ε` has held this long; `None` runs to `t_final`.
    pub dwell: Option<f64>,
}

impl Scenario {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |name, reason| Err(SimError::InvalidSetting { name, reason });
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad("dt", "must be positive");
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return bad("t_final", "must be positive");
        }
        if !(self.ground_speed > 0.0 && self.ground_speed.is_finite()) {
            return bad("ground_speed", "must be positive");
        }
        if !(self.tube > 0.0) {
            return bad("tube", "must be positive");
        }
        if let Some(d) = self.dwell {
            if !(d >= 0.0) {
                return bad("dwell", "must be non-negative");
            }
        }
        if let CourseChannel::FirstOrder { gain, max_rate } = self.channel {
            if !(gain > 0.0 && max_rate > 0.0) {
                return bad("k_chi", "course channel gain and rate limit must be positive");
            }
        }
        let (x, y) = self.initial_position;
        if !(hypot(x, y) > MIN_RANGE) {
            return bad("initial", "initial range must be positive");
        }
        let t = 0.0;
        self.curve
            .validate()
            .map_err(|source| SimError::Guidance { t, source })?;
        if let GuidanceLaw::Glass(p) = &self.law {
            p.validate().map_err(|source| SimError::Guidance { t, source })?;
        }
        Ok(())
    }
}

/// One logged sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub range: f64,
    pub los: f64,
    pub course: f64,
    pub look_angle: f64,
    pub error: f64,
    pub course_rate: f64,
    /// `κ = χ̇ / V_g`.
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub scenario: Scenario,
    pub rows: Vec<TraceRow>,
    /// First time `|e| ≤ ε`, interpolated between samples.
    pub tube_entry: Option<f64>,
}

impl SimTrace {
    pub fn initial_error(&self) -> f64 {
        self.rows.first().map_or(f64::NAN, |r| r.error)
    }
}

/// Advances the position one RK4 step with a constant applied course.
pub fn step_kinematics(
    state: &EngagementState,
    course: f64,
    ground_speed: f64,
    dt: f64,
) -> Result<EngagementState, SimError> {
    if !(state.range > 0.0) {
        return Err(SimError::RangeCollapse {
            t: state.t,
            range: state.range,
        });
    }
    let (vx, vy) = (ground_speed * cos(course), ground_speed * sin(course));
    let next = rk4_step(state.t, &[state.x, state.y], dt, |_, _| [vx, vy]);
    finish_step(next[0], next[1], course, state.t + dt)
}

fn finish_step(x: f64, y: f64, course: f64, t: f64) -> Result<EngagementState, SimError> {
    if !(x.is_finite() && y.is_finite() && course.is_finite()) {
        return Err(SimError::NonFinite { t });
    }
    let next = EngagementState::at(x, y, course, t);
    if next.range < MIN_RANGE {
        return Err(SimError::RangeCollapse { t, range: next.range });
    }
    Ok(next)
}

/// Runs a scenario until `t_final` or until the tube dwell is satisfied.
pub fn run_scenario(scenario: &Scenario) -> Result<SimTrace, SimError> {
    scenario.validate()?;
    let Scenario {
        curve,
        law,
        channel,
        ground_speed: speed,
        tube,
        dt,
        ..
    } = *scenario;
    let (x0, y0) = scenario.initial_position;

    let command = |x: f64, y: f64, t: f64| -> Result<f64, SimError> {
        let probe = EngagementState::at(x, y, 0.0, t);
        if probe.range < MIN_RANGE {
            return Err(SimError::RangeCollapse { t, range: probe.range });
        }
        law.commanded_course(&probe, &curve)
            .map_err(|source| SimError::Guidance { t, source })
    };

    let course0 = match scenario.initial_course {
        InitialCourse::Commanded => command(x0, y0, 0.0)?,
        InitialCourse::Fixed(c) => c,
    };
    let mut state = EngagementState::from_position(x0, y0, course0);
    let steps = libm::ceil(scenario.t_final / dt - 1e-9) as usize;
    let mut rows = Vec::with_capacity(steps + 1);
    let mut inside_since: Option<f64> = None;

    for step in 0..=steps {
        let t = step as f64 * dt;
        state.t = t;
        let commanded = command(state.x, state.y, t)?;
        if matches!(channel, CourseChannel::Ideal) {
            state.course = commanded;
        }
        let course_rate = match channel {
            CourseChannel::Ideal => {
                // directional central difference of χ_d along the velocity
                let (hx, hy) = (speed * dt * cos(commanded), speed * dt * sin(commanded));
                let ahead = command(state.x + hx, state.y + hy, t)?;
                let behind = command(state.x - hx, state.y - hy, t)?;
                wrap(ahead - behind) / (2.0 * dt)
            }
            CourseChannel::FirstOrder { gain, max_rate } => {
                (gain * wrap(commanded - state.course)).clamp(-max_rate, max_rate)
            }
        };
        let error = state.range - curve.radius_at(state.los);
        rows.push(TraceRow {
            t,
            x: state.x,
            y: state.y,
            range: state.range,
            los: state.los,
            course: state.course,
            look_angle: state.look_angle(),
            error,
            course_rate,
            curvature: course_rate / speed,
        });

        if fabs(error) <= tube {
            let since = *inside_since.get_or_insert(t);
            if let Some(dwell) = scenario.dwell {
                if t - since >= dwell - 1e-12 {
                    break;
                }
            }
        } else {
            inside_since = None;
        }
        if step == steps {
            break;
        }

        let (x, y, course) = match channel {
            CourseChannel::Ideal => {
                let next = try_rk4_step(t, &[state.x, state.y], dt, |tt, s| {
                    let chi = command(s[0], s[1], tt)?;
                    Ok::<_, SimError>([speed * cos(chi), speed * sin(chi)])
                })?;
                (next[0], next[1], commanded)
            }
            CourseChannel::FirstOrder { gain, max_rate } => {
                let next = try_rk4_step(t, &[state.x, state.y, state.course], dt, |tt, s| {
                    let chi_d = command(s[0], s[1], tt)?;
                    let rate = (gain * wrap(chi_d - s[2])).clamp(-max_rate, max_rate);
                    Ok::<_, SimError>([speed * cos(s[2]), speed * sin(s[2]), rate])
                })?;
                (next[0], next[1], next[2])
            }
        };
        state = finish_step(x, y, course, t + dt)?;
    }

    let tube_entry = measure_tube_entry(&rows, tube);
    Ok(SimTrace {
        scenario: scenario.clone(),
        rows,
        tube_entry,
    })
}

/// First time `|e| ≤ ε`, linearly interpolated between the bracketing rows.
pub fn measure_tube_entry(rows: &[TraceRow], tube: f64) -> Option<f64> {
    let first = rows.first()?;
    if fabs(first.error) <= tube {
        return Some(first.t);
    }
    rows.windows(2).find_map(|w| {
        let (a, b) = (fabs(w[0].error), fabs(w[1].error));
        (b <= tube).then(|| w[0].t + (a - tube) / (a - b) * (w[1].t - w[0].t))
    })
}

/// Peak `|χ̇|` over the trace.
pub fn max_turn_rate(rows: &[TraceRow]) -> f64 {
    rows.iter().map(|r| fabs(r.course_rate)).fold(0.0, f64::max)
}

/// Peak `|κ|` over the trace.
pub fn max_curvature(rows: &[TraceRow]) -> f64 {
    rows.iter().map(|r| fabs(r.curvature)).fold(0.0, f64::max)
}
