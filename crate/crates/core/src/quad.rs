//! 6DOF quadrotor with the shaping guidance embedded in a cascaded controller.
//!
//! Rigid body: Euler-angle (ZYX) attitude, body rates, rotor gyroscopic
//! coupling through the net rotor speed `Ω_r = Ω₂ + Ω₄ − Ω₁ − Ω₃`. Inputs are
//! the collective thrust `U1` and the body moments `U2..U4`, with
//!
//! ```text
//! U1 = b ΣΩᵢ²   U2 = b l (Ω₄² − Ω₂²)   U3 = b l (Ω₃² − Ω₁²)   U4 = d (Ω₂² + Ω₄² − Ω₁² − Ω₃²)
//! ```
//!
//! The guidance cascade runs at the control rate: planar error, commanded
//! course, wrap-aware command filter, rate-saturated course channel, velocity
//! reference with radial correction, acceleration command, tilt mapping with
//! `ψ_d = χ`, PD attitude/altitude loops and the mixer. The rigid body is then
//! integrated with several RK4 substeps per control step.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use libm::{atan2, cos, exp, fabs, hypot, sin, sqrt, tan};

use crate::angle::{rad, wrap};
use crate::curve::StandoffCurve;
use crate::glass::{commanded_course, GuidanceParams, OrbitDirection};
use crate::integrate::rk4_step;
use crate::planar::EngagementState;
use crate::SimError;

/// Physical constants of an OS4-class quadrotor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrotorParams {
    pub mass: f64,
    /// `(I_x, I_y, I_z)` [kg m²].
    pub inertia: [f64; 3],
    pub arm_length: f64,
    /// Thrust coefficient `b` [N s²].
    pub thrust_coeff: f64,
    /// Drag coefficient `d` [N m s²].
    pub drag_coeff: f64,
    /// Rotor inertia `J_r` [kg m²].
    pub rotor_inertia: f64,
    /// Upper rotor speed limit; the lower limit is zero [rad/s].
    pub max_rotor_speed: f64,
    pub gravity: f64,
}

impl Default for QuadrotorParams {
    fn default() -> Self {
        Self {
            mass: 0.24,
            inertia: [2.3e-3, 2.3e-3, 4.0e-3],
            arm_length: 0.20,
            thrust_coeff: 3.0e-6,
            drag_coeff: 1.0e-7,
            rotor_inertia: 2.0e-5,
            max_rotor_speed: 600.0,
            gravity: 9.81,
        }
    }
}

impl QuadrotorParams {
    pub fn validate(&self) -> Result<(), SimError> {
        let checks = [
            ("mass", self.mass),
            ("inertia_x", self.inertia[0]),
            ("inertia_y", self.inertia[1]),
            ("inertia_z", self.inertia[2]),
            ("arm_length", self.arm_length),
            ("thrust_coeff", self.thrust_coeff),
            ("drag_coeff", self.drag_coeff),
            ("rotor_inertia", self.rotor_inertia),
            ("max_rotor_speed", self.max_rotor_speed),
            ("gravity", self.gravity),
        ];
        for (name, v) in checks {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SimError::InvalidSetting {
                    name,
                    reason: "must be positive",
                });
            }
        }
        Ok(())
    }

    pub fn hover_thrust(&self) -> f64 {
        self.mass * self.gravity
    }

    /// Collective thrust with every rotor at its upper limit.
    pub fn max_thrust(&self) -> f64 {
        4.0 * self.thrust_coeff * self.max_rotor_speed * self.max_rotor_speed
    }
}

/// Rigid-body state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuadrotorState {
    pub position: [f64; 3],
    pub velocity: [f64; 3],
    /// `(φ, θ, ψ)` roll, pitch, yaw.
    pub attitude: [f64; 3],
    /// Body rates `(p, q, r)`.
    pub rates: [f64; 3],
    pub t: f64,
}

impl QuadrotorState {
    pub fn at_rest(position: [f64; 3], yaw: f64) -> Self {
        Self {
            position,
            attitude: [0.0, 0.0, wrap(yaw)],
            ..Self::default()
        }
    }

    pub fn kinetic_energy(&self, params: &QuadrotorParams) -> f64 {
        let v2: f64 = self.velocity.iter().map(|v| v * v).sum();
        let rot: f64 = (0..3).map(|i| params.inertia[i] * self.rates[i] * self.rates[i]).sum();
        0.5 * params.mass * v2 + 0.5 * rot
    }

    fn pack(&self) -> [f64; 12] {
        let mut s = [0.0; 12];
        s[0..3].copy_from_slice(&self.position);
        s[3..6].copy_from_slice(&self.velocity);
        s[6..9].copy_from_slice(&self.attitude);
        s[9..12].copy_from_slice(&self.rates);
        s
    }

    fn unpack(s: &[f64; 12], t: f64) -> Self {
        Self {
            position: [s[0], s[1], s[2]],
            velocity: [s[3], s[4], s[5]],
            attitude: [wrap(s[6]), wrap(s[7]), wrap(s[8])],
            rates: [s[9], s[10], s[11]],
            t,
        }
    }
}

/// Thrust and moment inputs `(U1, U2, U3, U4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlInputs {
    pub thrust: f64,
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

impl ControlInputs {
    pub fn as_array(&self) -> [f64; 4] {
        [self.thrust, self.roll, self.pitch, self.yaw]
    }
}

/// Rotor speeds `Ω₁..Ω₄` [rad/s].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RotorSpeeds(pub [f64; 4]);

impl RotorSpeeds {
    /// Net speed `Ω₂ + Ω₄ − Ω₁ − Ω₃` driving the gyroscopic terms.
    pub fn net(&self) -> f64 {
        let w = self.0;
        w[1] + w[3] - w[0] - w[2]
    }

    /// Forward actuator map.
    pub fn inputs(&self, params: &QuadrotorParams) -> ControlInputs {
        let sq = self.0.map(|w| w * w);
        let (b, l, d) = (params.thrust_coeff, params.arm_length, params.drag_coeff);
        ControlInputs {
            thrust: b * (sq[0] + sq[1] + sq[2] + sq[3]),
            roll: b * l * (sq[3] - sq[1]),
            pitch: b * l * (sq[2] - sq[0]),
            yaw: d * (sq[1] + sq[3] - sq[0] - sq[2]),
        }
    }
}

/// Inverts the actuator map, clamps every rotor into `[0, Ω_max]` and returns
/// the speeds with the inputs they actually produce.
pub fn mix_rotors(inputs: &ControlInputs, params: &QuadrotorParams) -> (RotorSpeeds, ControlInputs) {
    let (b, l, d) = (params.thrust_coeff, params.arm_length, params.drag_coeff);
    let total = inputs.thrust / b;
    let roll = inputs.roll / (b * l);
    let pitch = inputs.pitch / (b * l);
    let yaw = inputs.yaw / d;
    let even = 0.5 * (total + yaw); // Ω₂² + Ω₄²
    let odd = 0.5 * (total - yaw); // Ω₁² + Ω₃²
    let squares = [
        0.5 * (odd - pitch),
        0.5 * (even - roll),
        0.5 * (odd + pitch),
        0.5 * (even + roll),
    ];
    let max_sq = params.max_rotor_speed * params.max_rotor_speed;
    let speeds = RotorSpeeds(squares.map(|w| sqrt(w.clamp(0.0, max_sq))));
    let applied = speeds.inputs(params);
    (speeds, applied)
}

fn derivatives(s: &[f64; 12], u: &ControlInputs, net_rotor: f64, p: &QuadrotorParams) -> [f64; 12] {
    let (phi, theta, psi) = (s[6], s[7], s[8]);
    let (pr, qr, rr) = (s[9], s[10], s[11]);
    let [ix, iy, iz] = p.inertia;
    let (sph, cph) = (sin(phi), cos(phi));
    let (sth, cth) = (sin(theta), cos(theta));
    let (sps, cps) = (sin(psi), cos(psi));
    let accel = u.thrust / p.mass;
    [
        s[3],
        s[4],
        s[5],
        (cph * sth * cps + sph * sps) * accel,
        (cph * sth * sps - sph * cps) * accel,
        cph * cth * accel - p.gravity,
        pr + (qr * sph + rr * cph) * tan(theta),
        qr * cph - rr * sph,
        (qr * sph + rr * cph) / cth,
        ((iy - iz) * qr * rr - p.rotor_inertia * qr * net_rotor + u.roll) / ix,
        ((iz - ix) * pr * rr + p.rotor_inertia * pr * net_rotor + u.pitch) / iy,
        ((ix - iy) * pr * qr + u.yaw) / iz,
    ]
}

/// One RK4 step of the rigid body with inputs held over the step.
pub fn step_quadrotor(
    state: &QuadrotorState,
    inputs: &ControlInputs,
    net_rotor_speed: f64,
    params: &QuadrotorParams,
    dt: f64,
) -> Result<QuadrotorState, SimError> {
    let next = rk4_step(state.t, &state.pack(), dt, |_, s| derivatives(s, inputs, net_rotor_speed, params));
    let t = state.t + dt;
    if next.iter().any(|v| !v.is_finite()) {
        return Err(SimError::NonFinite { t });
    }
    Ok(QuadrotorState::unpack(&next, t))
}

/// Guidance and translational outer-loop settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OuterLoopParams {
    /// Course channel gain `k_χ` [1/s].
    pub course_gain: f64,
    /// Course rate limit `ω_max` [rad/s].
    pub max_course_rate: f64,
    /// Command filter time constant `τ_χd` [s].
    pub course_filter_tau: f64,
    pub v_ref: f64,
    /// Velocity loop gain `k_v` [1/s].
    pub velocity_gain: f64,
    pub max_accel: f64,
    /// Radial correction gain `k_rad` [1/s].
    pub radial_gain: f64,
    pub max_roll: f64,
    pub max_pitch: f64,
    /// Orbit radius `r_d` [m].
    pub radius: f64,
    /// Orbit altitude `z_d` [m].
    pub altitude: f64,
    /// Shaping gain `k_G` [1/m].
    pub shaping_gain: f64,
    pub direction: OrbitDirection,
}

impl Default for OuterLoopParams {
    fn default() -> Self {
        Self {
            course_gain: 3.0,
            max_course_rate: 0.8,
            course_filter_tau: 0.6,
            v_ref: 2.0,
            velocity_gain: 2.5,
            max_accel: 8.0,
            radial_gain: 0.8,
            max_roll: rad(40.0),
            max_pitch: rad(40.0),
            radius: 20.0,
            altitude: 10.0,
            shaping_gain: 0.08,
            direction: OrbitDirection::Ccw,
        }
    }
}

impl OuterLoopParams {
    pub fn validate(&self) -> Result<(), SimError> {
        let checks = [
            ("k_chi", self.course_gain),
            ("max_course_rate", self.max_course_rate),
            ("tau_chi", self.course_filter_tau),
            ("v_ref", self.v_ref),
            ("k_v", self.velocity_gain),
            ("a_max", self.max_accel),
            ("k_rad", self.radial_gain),
            ("radius", self.radius),
            ("k_G", self.shaping_gain),
        ];
        for (name, v) in checks {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SimError::InvalidSetting {
                    name,
                    reason: "must be positive",
                });
            }
        }
        for (name, v) in [("max_roll", self.max_roll), ("max_pitch", self.max_pitch)] {
            if !(v > 0.0 && v < FRAC_PI_2) {
                return Err(SimError::InvalidSetting {
                    name,
                    reason: "tilt limit must lie in (0, 90) degrees",
                });
            }
        }
        if !self.altitude.is_finite() {
            return Err(SimError::InvalidSetting {
                name: "altitude",
                reason: "must be finite",
            });
        }
        Ok(())
    }
}

/// PD gains of the inner attitude and altitude loops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerLoopGains {
    pub tilt_kp: f64,
    pub tilt_kd: f64,
    pub yaw_kp: f64,
    pub yaw_kd: f64,
    pub altitude_kp: f64,
    pub altitude_kd: f64,
    /// Vertical acceleration command limit [m/s²].
    pub max_vertical_accel: f64,
    /// Collective thrust ceiling as a fraction of [`QuadrotorParams::max_thrust`];
    /// leaves rotor headroom for the moment channels.
    pub thrust_headroom: f64,
}

impl Default for InnerLoopGains {
    fn default() -> Self {
        // tilt: ω_n = 15 rad/s, critically damped; yaw: ω_n = 5 rad/s;
        // altitude: ω_n = 2 rad/s
        Self {
            tilt_kp: 225.0,
            tilt_kd: 30.0,
            yaw_kp: 25.0,
            yaw_kd: 10.0,
            altitude_kp: 4.0,
            altitude_kd: 4.0,
            max_vertical_accel: 4.0,
            thrust_headroom: 0.85,
        }
    }
}

/// One exact-discretization step of `χ̇_f = wrap(χ_d − χ_f) / τ`.
pub fn filter_course_command(filtered: f64, commanded: f64, tau: f64, dt: f64) -> f64 {
    wrap(filtered + (1.0 - exp(-dt / tau)) * wrap(commanded - filtered))
}

/// Saturated course-channel rate `sat(k_χ wrap(χ_f − χ), ω_max)`.
pub fn course_channel_rate(course: f64, filtered: f64, gain: f64, max_rate: f64) -> f64 {
    (gain * wrap(filtered - course)).clamp(-max_rate, max_rate)
}

/// Advances the course channel one control step.
pub fn course_channel_step(course: f64, filtered: f64, gain: f64, max_rate: f64, dt: f64) -> f64 {
    wrap(course + dt * course_channel_rate(course, filtered, gain, max_rate))
}

/// `v_ref = V_ref t̂(χ) − k_rad e r̂(γ)`.
pub fn velocity_reference(course: f64, los: f64, error: f64, params: &OuterLoopParams) -> [f64; 2] {
    [
        params.v_ref * cos(course) - params.radial_gain * error * cos(los),
        params.v_ref * sin(course) - params.radial_gain * error * sin(los),
    ]
}

/// `k_v (v_ref − v_xy)` with a direction-preserving norm clamp at `a_max`.
pub fn acceleration_command(v_ref: [f64; 2], v_xy: [f64; 2], gain: f64, max_accel: f64) -> [f64; 2] {
    let a = [gain * (v_ref[0] - v_xy[0]), gain * (v_ref[1] - v_xy[1])];
    let norm = hypot(a[0], a[1]);
    if norm > max_accel {
        [a[0] * max_accel / norm, a[1] * max_accel / norm]
    } else {
        a
    }
}

/// Small-tilt map from inertial acceleration to `(φ_d, θ_d)`, clamped.
pub fn acceleration_to_attitude(accel: [f64; 2], yaw: f64, gravity: f64, max_roll: f64, max_pitch: f64) -> (f64, f64) {
    let (s, c) = (sin(yaw), cos(yaw));
    let pitch = (accel[0] * c + accel[1] * s) / gravity;
    let roll = (accel[0] * s - accel[1] * c) / gravity;
    (roll.clamp(-max_roll, max_roll), pitch.clamp(-max_pitch, max_pitch))
}

/// Full 6DOF inspection run settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SixDofConfig {
    pub vehicle: QuadrotorParams,
    pub outer: OuterLoopParams,
    pub inner: InnerLoopGains,
    pub initial_position: [f64; 3],
    pub control_dt: f64,
    /// Rigid-body RK4 substeps per control step.
    pub substeps: usize,
    pub t_final: f64,
}

impl Default for SixDofConfig {
    fn default() -> Self {
        Self {
            vehicle: QuadrotorParams::default(),
            outer: OuterLoopParams::default(),
            inner: InnerLoopGains::default(),
            initial_position: [0.0, -5.0, 0.0],
            control_dt: 0.01,
            substeps: 10,
            t_final: 200.0,
        }
    }
}

/// One control-step sample of a 6DOF run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadRow {
    pub t: f64,
    pub position: [f64; 3],
    pub attitude: [f64; 3],
    /// Applied `(U1, U2, U3, U4)` after actuator saturation.
    pub inputs: [f64; 4],
    pub rotor_speeds: [f64; 4],
    pub range: f64,
    pub error: f64,
    pub course: f64,
    pub commanded_course: f64,
    pub course_rate: f64,
    /// Commanded `(φ_d, θ_d)`.
    pub tilt_command: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadTrace {
    pub config: SixDofConfig,
    pub rows: Vec<QuadRow>,
}

impl QuadTrace {
    /// Rows covering the last full revolution of the line-of-sight angle.
    pub fn final_lap(&self) -> &[QuadRow] {
        let mut swept = 0.0;
        let mut start = 0;
        for i in (1..self.rows.len()).rev() {
            let a = atan2(self.rows[i].position[1], self.rows[i].position[0]);
            let b = atan2(self.rows[i - 1].position[1], self.rows[i - 1].position[0]);
            swept += fabs(wrap(a - b));
            if swept >= 2.0 * core::f64::consts::PI {
                start = i - 1;
                break;
            }
        }
        &self.rows[start..]
    }
}

/// Steady-orbit summary of a 6DOF run, evaluated over [`QuadTrace::final_lap`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitMetrics {
    pub mean_radius: f64,
    pub max_altitude_error: f64,
    /// Lap mean of `(U1, U2, U3, U4)`.
    pub mean_inputs: [f64; 4],
    /// Whole-run peak `|U|` per channel.
    pub peak_inputs: [f64; 4],
    /// Lap mean line-of-sight rate and its max deviation from the mean.
    pub mean_los_rate: f64,
    pub los_rate_spread: f64,
    pub lap_period: f64,
    /// Whole-run extrema.
    pub max_course_rate: f64,
    pub max_tilt_command: f64,
    pub max_tilt: f64,
    pub rotor_speed_range: (f64, f64),
}

impl QuadTrace {
    pub fn orbit_metrics(&self) -> OrbitMetrics {
        let lap = self.final_lap();
        let n = lap.len() as f64;
        let mean = |f: &dyn Fn(&QuadRow) -> f64| lap.iter().map(f).sum::<f64>() / n;
        let mut mean_inputs = [0.0; 4];
        let mut peak_inputs = [0.0f64; 4];
        for i in 0..4 {
            mean_inputs[i] = mean(&|r: &QuadRow| r.inputs[i]);
            peak_inputs[i] = self.rows.iter().map(|r| fabs(r.inputs[i])).fold(0.0, f64::max);
        }
        let los = |r: &QuadRow| atan2(r.position[1], r.position[0]);
        let rates: Vec<f64> = lap
            .windows(2)
            .map(|w| wrap(los(&w[1]) - los(&w[0])) / (w[1].t - w[0].t))
            .collect();
        let mean_los_rate = rates.iter().sum::<f64>() / rates.len().max(1) as f64;
        let los_rate_spread = rates.iter().map(|r| fabs(r - mean_los_rate)).fold(0.0, f64::max);
        let lap_period = match (lap.first(), lap.last()) {
            (Some(a), Some(b)) => b.t - a.t,
            _ => 0.0,
        };
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in &self.rows {
            for w in r.rotor_speeds {
                lo = lo.min(w);
                hi = hi.max(w);
            }
        }
        OrbitMetrics {
            mean_radius: mean(&|r: &QuadRow| r.range),
            max_altitude_error: lap
                .iter()
                .map(|r| fabs(r.position[2] - self.config.outer.altitude))
                .fold(0.0, f64::max),
            mean_inputs,
            peak_inputs,
            mean_los_rate,
            los_rate_spread,
            lap_period,
            max_course_rate: self.rows.iter().map(|r| fabs(r.course_rate)).fold(0.0, f64::max),
            max_tilt_command: self
                .rows
                .iter()
                .map(|r| fabs(r.tilt_command[0]).max(fabs(r.tilt_command[1])))
                .fold(0.0, f64::max),
            max_tilt: self
                .rows
                .iter()
                .map(|r| fabs(r.attitude[0]).max(fabs(r.attitude[1])))
                .fold(0.0, f64::max),
            rotor_speed_range: (lo, hi),
        }
    }
}

/// Runs the guidance cascade on the quadrotor.
pub fn run_6dof_inspection(config: &SixDofConfig) -> Result<QuadTrace, SimError> {
    let SixDofConfig {
        vehicle,
        outer,
        inner,
        control_dt,
        substeps,
        ..
    } = *config;
    vehicle.validate()?;
    outer.validate()?;
    if !(control_dt > 0.0) || substeps == 0 || !(config.t_final > 0.0) {
        return Err(SimError::InvalidSetting {
            name: "control_dt",
            reason: "control step, substeps and t_final must be positive",
        });
    }
    let curve = StandoffCurve::Circle { radius: outer.radius };
    let guidance = GuidanceParams {
        gain: outer.shaping_gain,
        direction: outer.direction,
        ground_speed: outer.v_ref,
        max_turn_rate: outer.max_course_rate,
        tube: 0.05,
    };
    let planar = |s: &QuadrotorState| -> Result<(EngagementState, f64), SimError> {
        let e = EngagementState::at(s.position[0], s.position[1], 0.0, s.t);
        let chi_d = commanded_course(&e, &curve, &guidance).map_err(|source| SimError::Guidance { t: s.t, source })?;
        Ok((e, chi_d))
    };

    let mut state = QuadrotorState::at_rest(config.initial_position, 0.0);
    let (_, chi0) = planar(&state)?;
    state.attitude[2] = chi0;
    let mut course = chi0;
    let mut filtered = chi0;

    let steps = libm::ceil(config.t_final / control_dt - 1e-9) as usize;
    let sub_dt = control_dt / substeps as f64;
    let thrust_ceiling = inner.thrust_headroom * vehicle.max_thrust();
    let mut rows = Vec::with_capacity(steps + 1);

    for step in 0..=steps {
        state.t = step as f64 * control_dt;
        let (geo, chi_d) = planar(&state)?;
        let error = geo.range - outer.radius;

        filtered = filter_course_command(filtered, chi_d, outer.course_filter_tau, control_dt);
        let course_rate = course_channel_rate(course, filtered, outer.course_gain, outer.max_course_rate);
        course = wrap(course + control_dt * course_rate);

        let v_ref = velocity_reference(course, geo.los, error, &outer);
        let v_xy = [state.velocity[0], state.velocity[1]];
        let accel = acceleration_command(v_ref, v_xy, outer.velocity_gain, outer.max_accel);
        let [phi, theta, psi] = state.attitude;
        let (roll_d, pitch_d) = acceleration_to_attitude(accel, psi, vehicle.gravity, outer.max_roll, outer.max_pitch);
        let yaw_d = course;

        let [ix, iy, iz] = vehicle.inertia;
        let [p, q, r] = state.rates;
        let vertical = (inner.altitude_kp * (outer.altitude - state.position[2]) - inner.altitude_kd * state.velocity[2])
            .clamp(-inner.max_vertical_accel, inner.max_vertical_accel);
        let command = ControlInputs {
            thrust: (vehicle.mass * (vehicle.gravity + vertical) / (cos(phi) * cos(theta))).clamp(0.0, thrust_ceiling),
            roll: ix * (inner.tilt_kp * (roll_d - phi) - inner.tilt_kd * p),
            pitch: iy * (inner.tilt_kp * (pitch_d - theta) - inner.tilt_kd * q),
            yaw: iz * (inner.yaw_kp * wrap(yaw_d - psi) + inner.yaw_kd * (course_rate - r)),
        };
        let (speeds, applied) = mix_rotors(&command, &vehicle);

        rows.push(QuadRow {
            t: state.t,
            position: state.position,
            attitude: state.attitude,
            inputs: applied.as_array(),
            rotor_speeds: speeds.0,
            range: geo.range,
            error,
            course,
            commanded_course: chi_d,
            course_rate,
            tilt_command: [roll_d, pitch_d],
        });
        if step == steps {
            break;
        }
        for _ in 0..substeps {
            state = step_quadrotor(&state, &applied, speeds.net(), &vehicle, sub_dt)?;
        }
    }
    Ok(QuadTrace {
        config: *config,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn filter_holds_and_wraps_short_way() {
        assert!(fabs(filter_course_command(0.3, 0.3, 0.6, 0.01) - 0.3) < 1e-15);
        let up = filter_course_command(PI - 0.05, -PI + 0.05, 0.6, 0.01);
        assert!(up > PI - 0.05 || up < -PI + 0.05);
        let down = filter_course_command(-PI + 0.05, PI - 0.05, 0.6, 0.01);
        assert!(down < -PI + 0.05 || down > PI - 0.05);
    }

    #[test]
    fn filter_step_response() {
        let (tau, dt) = (0.6, 1e-3);
        let mut f = 0.0;
        for i in 1..=3000 {
            f = filter_course_command(f, 1.0, tau, dt);
            let t = i as f64 * dt;
            assert!(fabs(f - (1.0 - exp(-t / tau))) < 1e-4);
        }
    }

    #[test]
    fn course_channel_saturation() {
        assert!(fabs(course_channel_step(0.4, 0.4, 3.0, 0.8, 0.01) - 0.4) < 1e-15);
        assert_eq!(course_channel_rate(0.0, 2.0, 3.0, 0.8), 0.8);
        assert_eq!(course_channel_rate(0.0, -2.0, 3.0, 0.8), -0.8);
        assert!(fabs(course_channel_rate(0.0, 0.1, 3.0, 0.8) - 0.3) < 1e-15);
    }

    #[test]
    fn velocity_reference_values() {
        let p = OuterLoopParams::default();
        let v = velocity_reference(0.7, 0.2, 0.0, &p);
        assert!(fabs(v[0] - 2.0 * cos(0.7)) < 1e-15 && fabs(v[1] - 2.0 * sin(0.7)) < 1e-15);
        let v = velocity_reference(FRAC_PI_2, 0.0, 5.0, &p);
        assert!(fabs(v[0] + 4.0) < 1e-12 && fabs(v[1] - 2.0) < 1e-12);
        // radial component points inward for e > 0
        let (g, e) = (1.1, 3.0);
        let v = velocity_reference(g + FRAC_PI_2, g, e, &p);
        let radial = v[0] * cos(g) + v[1] * sin(g);
        assert!(fabs(radial + 0.8 * e) < 1e-12);
    }

    #[test]
    fn acceleration_command_clamps_norm() {
        assert_eq!(acceleration_command([1.0, 2.0], [1.0, 2.0], 2.5, 8.0), [0.0, 0.0]);
        let a = acceleration_command([4.0, 0.0], [0.0, 0.0], 2.5, 8.0);
        assert!(fabs(a[0] - 8.0) < 1e-12 && a[1] == 0.0);
        let a = acceleration_command([1.0, 1.0], [0.0, 0.0], 2.5, 8.0);
        assert_eq!(a, [2.5, 2.5]);
    }

    #[test]
    fn attitude_mapping() {
        let lim = rad(40.0);
        assert_eq!(acceleration_to_attitude([0.0, 0.0], 0.3, 9.81, lim, lim), (0.0, 0.0));
        let (roll, pitch) = acceleration_to_attitude([9.81, 0.0], 0.0, 9.81, lim, lim);
        assert!(fabs(pitch - lim) < 1e-15 && fabs(roll) < 1e-15);
        let (roll, pitch) = acceleration_to_attitude([2.0, 0.0], FRAC_PI_2, 9.81, lim, lim);
        assert!(fabs(pitch) < 1e-15 && fabs(roll - 2.0 / 9.81) < 1e-15);
    }

    #[test]
    fn attitude_mapping_matches_rotation_small_tilt() {
        // thrust direction of ZYX Euler rotation, linearized: a ≈ g·(θ cψ + φ sψ, θ sψ − φ cψ)
        let lim = 1.0;
        for &(ax, ay, psi) in &[(0.3, -0.2, 0.7), (-0.1, 0.4, -2.0), (0.05, 0.05, 3.0)] {
            let (roll, pitch) = acceleration_to_attitude([ax, ay], psi, 9.81, lim, lim);
            let rx = 9.81 * (pitch * cos(psi) + roll * sin(psi));
            let ry = 9.81 * (pitch * sin(psi) - roll * cos(psi));
            assert!(fabs(rx - ax) < 1e-12 && fabs(ry - ay) < 1e-12);
        }
    }

    #[test]
    fn hover_is_equilibrium() {
        let p = QuadrotorParams::default();
        let s0 = QuadrotorState::at_rest([1.0, 2.0, 3.0], 0.4);
        let u = ControlInputs {
            thrust: p.hover_thrust(),
            ..Default::default()
        };
        let s1 = step_quadrotor(&s0, &u, 0.0, &p, 0.01).unwrap();
        assert!(fabs(s1.position[2] - 3.0) < 1e-15);
        assert_eq!(s1.attitude, s0.attitude);
        assert!((s1.t - 0.01).abs() < 1e-15);
    }

    #[test]
    fn free_fall() {
        let p = QuadrotorParams::default();
        let mut s = QuadrotorState::at_rest([0.0, 0.0, 10.0], 0.0);
        for _ in 0..100 {
            s = step_quadrotor(&s, &ControlInputs::default(), 0.0, &p, 0.001).unwrap();
        }
        assert!(fabs(s.velocity[2] + 9.81 * 0.1) < 1e-12);
        assert!(fabs(s.position[2] - (10.0 - 0.5 * 9.81 * 0.01)) < 1e-12);
    }

    #[test]
    fn pure_yaw_torque() {
        let p = QuadrotorParams::default();
        let u4 = 1e-3;
        let u = ControlInputs {
            thrust: p.hover_thrust(),
            yaw: u4,
            ..Default::default()
        };
        let mut s = QuadrotorState::at_rest([0.0; 3], 0.0);
        for _ in 0..100 {
            s = step_quadrotor(&s, &u, 0.0, &p, 0.001).unwrap();
        }
        let expected = u4 * 0.01 / (2.0 * p.inertia[2]);
        assert!(fabs(s.attitude[2] - expected) < 1e-6);
    }

    #[test]
    fn symmetric_hover_mix() {
        let p = QuadrotorParams::default();
        let u = ControlInputs {
            thrust: p.hover_thrust(),
            ..Default::default()
        };
        let (speeds, applied) = mix_rotors(&u, &p);
        let expected = p.hover_thrust() / (4.0 * p.thrust_coeff);
        for w in speeds.0 {
            assert!(fabs(w * w - expected) < 1e-8);
        }
        assert!(fabs(applied.thrust - u.thrust) < 1e-12);
        assert_eq!(speeds.net(), 0.0);
    }

    #[test]
    fn mixer_clamps_negative_and_recomputes() {
        let p = QuadrotorParams::default();
        let u = ControlInputs {
            thrust: 0.5,
            roll: 0.2,
            ..Default::default()
        };
        let (speeds, applied) = mix_rotors(&u, &p);
        assert_eq!(speeds.0[1], 0.0);
        assert_eq!(applied, speeds.inputs(&p));
        assert!(applied.roll < u.roll);
        let big = ControlInputs {
            thrust: 100.0,
            ..Default::default()
        };
        let (speeds, _) = mix_rotors(&big, &p);
        assert!(speeds.0.iter().all(|&w| w <= 600.0));
    }

    #[test]
    fn default_inspection_captures_orbit() {
        let trace = run_6dof_inspection(&SixDofConfig {
            t_final: 120.0,
            ..Default::default()
        })
        .unwrap();
        let m = trace.orbit_metrics();
        assert!(fabs(m.mean_radius - 20.0) < 1.0);
        assert!(m.max_altitude_error < 0.1);
        assert!(m.max_course_rate <= 0.8 + 1e-12);
        assert!(m.max_tilt_command <= rad(40.0) + 1e-12);
        assert!(m.mean_inputs[0] > QuadrotorParams::default().hover_thrust());
    }

    #[test]
    fn tilt_limits_are_validated() {
        let mut o = OuterLoopParams::default();
        o.max_roll = 2.0;
        assert!(o.validate().is_err());
    }
}
