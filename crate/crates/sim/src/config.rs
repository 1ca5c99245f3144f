//! TOML scenario files.
//!
//! Planar scenarios use [`ScenarioConfig`]; 6DOF runs use [`SixDofFile`].
//! Unknown keys are rejected and every value is checked before a run starts.
//! Errors name the offending key path, e.g. `guidance.k_G`. Human-entered
//! angles (initial course, tilt limits) are in degrees. Everything internal
//! is in radians, converted here.

use std::path::{Path, PathBuf};

use glass_core::angle::{deg, rad};
use glass_core::arcsine::{match_arcsine_gain, ArcsineError, ArcsineParams};
use glass_core::curve::StandoffCurve;
use glass_core::glass::{GuidanceParams, OrbitDirection};
use glass_core::planar::{CourseChannel, GuidanceLaw, InitialCourse, Scenario, MIN_RANGE};
use glass_core::quad::{InnerLoopGains, OuterLoopParams, QuadrotorParams, SixDofConfig};
use glass_core::SimError;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::{AppError, ConfigError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Ccw,
    Cw,
}

impl From<Direction> for OrbitDirection {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Ccw => OrbitDirection::Ccw,
            Direction::Cw => OrbitDirection::Cw,
        }
    }
}

impl From<OrbitDirection> for Direction {
    fn from(d: OrbitDirection) -> Self {
        match d {
            OrbitDirection::Ccw => Direction::Ccw,
            OrbitDirection::Cw => Direction::Cw,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    #[default]
    Glass,
    Arcsine,
}

/// Error signal fed to the arcsine baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorSignal {
    #[default]
    Normalized,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Channel {
    #[default]
    Ideal,
    FirstOrder,
}

/// Initial course: `"ideal"` (aligned with the guidance command) or degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CourseSpec {
    Degrees(f64),
    Keyword(String),
}

impl Default for CourseSpec {
    fn default() -> Self {
        Self::Keyword("ideal".into())
    }
}

impl CourseSpec {
    fn resolve(&self, key: &str) -> Result<InitialCourse, ConfigError> {
        match self {
            Self::Keyword(k) if k == "ideal" => Ok(InitialCourse::Commanded),
            Self::Keyword(k) => Err(ConfigError::new(
                key,
                format!("expected \"ideal\" or an angle in degrees, got \"{k}\""),
            )),
            Self::Degrees(d) if d.is_finite() => Ok(InitialCourse::Fixed(rad(*d))),
            Self::Degrees(d) => Err(ConfigError::new(key, format!("course must be finite, got {d}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VehicleSection {
    /// Ground speed `V_g` [m/s].
    pub ground_speed: f64,
    /// Course rate limit `ω_max` [rad/s].
    pub max_turn_rate: f64,
}

impl Default for VehicleSection {
    fn default() -> Self {
        Self {
            ground_speed: 20.0,
            max_turn_rate: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "curve", rename_all = "lowercase", deny_unknown_fields)]
pub enum CurveSection {
    Circle {
        radius: f64,
    },
    Ellipse {
        semi_major: f64,
        semi_minor: f64,
    },
    Lame {
        semi_major: f64,
        semi_minor: f64,
        exponent: f64,
    },
}

impl CurveSection {
    pub fn build(&self) -> Result<StandoffCurve, ConfigError> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(ConfigError::new(
                    format!("curve.{name}"),
                    format!("must be positive and finite, got {v}"),
                ))
            }
        };
        let curve = match *self {
            Self::Circle { radius } => StandoffCurve::Circle {
                radius: positive("radius", radius)?,
            },
            Self::Ellipse {
                semi_major,
                semi_minor,
            } => StandoffCurve::Ellipse {
                semi_major: positive("semi_major", semi_major)?,
                semi_minor: positive("semi_minor", semi_minor)?,
            },
            Self::Lame {
                semi_major,
                semi_minor,
                exponent,
            } => {
                if !(exponent >= 2.0 && exponent.is_finite()) {
                    return Err(ConfigError::new(
                        "curve.exponent",
                        format!("Lamé exponent must be finite and >= 2, got {exponent}"),
                    ));
                }
                StandoffCurve::Lame {
                    a: positive("semi_major", semi_major)?,
                    b: positive("semi_minor", semi_minor)?,
                    exponent,
                }
            }
        };
        curve.validate().map_err(|e| ConfigError::new("curve", e.to_string()))?;
        Ok(curve)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GuidanceSection {
    #[serde(default)]
    pub law: Law,
    /// Shaping gain `k_G` [1/m]. Arcsine runs without `k_D` use it to derive
    /// the heading-matched baseline gain.
    #[serde(rename = "k_G")]
    pub k_g: f64,
    #[serde(default)]
    pub direction: Direction,
    /// Tube half-width `ε` [m].
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(rename = "k_D", default, skip_serializing_if = "Option::is_none")]
    pub k_d: Option<f64>,
    #[serde(default)]
    pub arcsine_error: ErrorSignal,
}

fn default_epsilon() -> f64 {
    0.05
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub course: CourseSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimSection {
    pub dt: f64,
    pub t_final: f64,
    /// Stop once the tube has held this long [s]; absent runs to `t_final`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dwell: Option<f64>,
    pub channel: Channel,
    /// First-order course channel gain `k_χ` [1/s].
    pub k_chi: f64,
    pub output: PathBuf,
}

impl Default for SimSection {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_final: 120.0,
            dwell: None,
            channel: Channel::Ideal,
            k_chi: 50.0,
            output: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StartSpec {
    pub name: String,
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub course: CourseSpec,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub gains: Vec<f64>,
    /// Start positions; when empty the `[initial]` section is used.
    #[serde(rename = "start")]
    pub starts: Vec<StartSpec>,
}

/// A planar scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub vehicle: VehicleSection,
    pub curve: CurveSection,
    pub guidance: GuidanceSection,
    pub initial: InitialSection,
    #[serde(default)]
    pub sim: SimSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

/// One resolved start position of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Start {
    pub name: String,
    pub key: String,
    pub x: f64,
    pub y: f64,
    pub course: CourseSpec,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        parse_toml(text)
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let cfg = Self::from_toml(&read(path)?)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario config is always representable as TOML")
    }

    /// Applies the global `--dt` / `--out` overrides.
    pub fn apply_overrides(&mut self, dt: Option<f64>, out: Option<&Path>) {
        if let Some(dt) = dt {
            self.sim.dt = dt;
        }
        if let Some(out) = out {
            self.sim.output = out.to_path_buf();
        }
    }

    /// Checks every key, including each sweep entry.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.scenario()?;
        if let Some(sweep) = &self.sweep {
            for (i, &g) in sweep.gains.iter().enumerate() {
                check_gain(&format!("sweep.gains[{i}]"), g)?;
            }
            for start in &self.starts() {
                self.scenario_at(start, self.guidance.k_g)?;
            }
        }
        Ok(())
    }

    /// The single scenario described by `[initial]`.
    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        self.scenario_at(&self.initial_start(), self.guidance.k_g)
    }

    /// Sweep starts, falling back to `[initial]`.
    pub fn starts(&self) -> Vec<Start> {
        match &self.sweep {
            Some(s) if !s.starts.is_empty() => s
                .starts
                .iter()
                .enumerate()
                .map(|(i, s)| Start {
                    name: s.name.clone(),
                    key: format!("sweep.start[{i}]"),
                    x: s.x,
                    y: s.y,
                    course: s.course.clone(),
                })
                .collect(),
            _ => vec![self.initial_start()],
        }
    }

    fn initial_start(&self) -> Start {
        Start {
            name: "initial".into(),
            key: "initial".into(),
            x: self.initial.x,
            y: self.initial.y,
            course: self.initial.course.clone(),
        }
    }

    /// Builds the scenario for a given start and shaping gain.
    pub fn scenario_at(&self, start: &Start, k_g: f64) -> Result<Scenario, ConfigError> {
        let v = &self.vehicle;
        let positive = |key: &str, val: f64| {
            if val > 0.0 && val.is_finite() {
                Ok(val)
            } else {
                Err(ConfigError::new(key, format!("must be positive and finite, got {val}")))
            }
        };
        positive("vehicle.ground_speed", v.ground_speed)?;
        positive("vehicle.max_turn_rate", v.max_turn_rate)?;
        let curve = self.curve.build()?;
        check_gain("guidance.k_G", self.guidance.k_g)?;
        check_gain("guidance.k_G", k_g)?;
        positive("guidance.epsilon", self.guidance.epsilon)?;

        if !(start.x.is_finite() && start.y.is_finite()) {
            return Err(ConfigError::new(&start.key, "x and y must be finite"));
        }
        let range = start.x.hypot(start.y);
        if !(range > MIN_RANGE) {
            return Err(ConfigError::new(
                &start.key,
                "start must not coincide with the curve centre",
            ));
        }
        let initial_course = start.course.resolve(&format!("{}.course", start.key))?;

        let s = &self.sim;
        positive("sim.dt", s.dt)?;
        positive("sim.t_final", s.t_final)?;
        if s.dt > s.t_final {
            return Err(ConfigError::new("sim.dt", "step exceeds t_final"));
        }
        if let Some(d) = s.dwell {
            if !(d >= 0.0 && d.is_finite()) {
                return Err(ConfigError::new("sim.dwell", format!("must be non-negative, got {d}")));
            }
        }
        let channel = match s.channel {
            Channel::Ideal => CourseChannel::Ideal,
            Channel::FirstOrder => CourseChannel::FirstOrder {
                gain: positive("sim.k_chi", s.k_chi)?,
                max_rate: v.max_turn_rate,
            },
        };

        let g = &self.guidance;
        let direction = g.direction.into();
        let law = match g.law {
            Law::Glass => GuidanceLaw::Glass(GuidanceParams {
                gain: k_g,
                direction,
                ground_speed: v.ground_speed,
                max_turn_rate: v.max_turn_rate,
                tube: g.epsilon,
            }),
            Law::Arcsine => {
                let gain = match g.k_d {
                    Some(k) if k.is_finite() && k != 0.0 => k,
                    Some(k) => {
                        return Err(ConfigError::new("guidance.k_D", format!("must be finite and non-zero, got {k}")))
                    }
                    None => self.matched_gain(&curve, range, k_g, "guidance.k_D")?,
                };
                GuidanceLaw::Arcsine(ArcsineParams {
                    gain,
                    error: match g.arcsine_error {
                        ErrorSignal::Normalized => ArcsineError::Normalized,
                        ErrorSignal::Raw => ArcsineError::Raw,
                    },
                    direction,
                })
            }
        };

        let scenario = Scenario {
            curve,
            law,
            channel,
            ground_speed: v.ground_speed,
            tube: g.epsilon,
            initial_position: (start.x, start.y),
            initial_course,
            dt: s.dt,
            t_final: s.t_final,
            dwell: s.dwell,
        };
        scenario.validate().map_err(|e| match e {
            SimError::InvalidSetting { name, reason } => ConfigError::new(format!("sim.{name}"), reason),
            other => ConfigError::new("scenario", other.to_string()),
        })?;
        Ok(scenario)
    }

    /// Heading-matched arcsine gain for a start at `range`; circle curves only.
    pub fn matched_gain(&self, curve: &StandoffCurve, range: f64, k_g: f64, key: &str) -> Result<f64, ConfigError> {
        let StandoffCurve::Circle { radius } = *curve else {
            return Err(ConfigError::new(key, "heading-matched arcsine gain needs a circle curve"));
        };
        match_arcsine_gain(range, radius, k_g).map_err(|e| ConfigError::new(key, e.to_string()))
    }
}

fn check_gain(key: &str, g: f64) -> Result<(), ConfigError> {
    if g > 0.0 && g.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::new(key, format!("shaping gain must be positive and finite, got {g}")))
    }
}

fn read(path: &Path) -> Result<String, AppError> {
    std::fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_toml<T: DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::new("<syntax>", e.to_string()))?;
    serde_path_to_error::deserialize(de).map_err(|e| {
        let key = e.path().to_string();
        let key = if key == "." { "<root>".to_string() } else { key };
        ConfigError::new(key, e.into_inner().message().to_string())
    })
}

/// Vehicle constants, orbit geometry and the translational outer loop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadSection {
    pub mass: f64,
    pub inertia_x: f64,
    pub inertia_y: f64,
    pub inertia_z: f64,
    pub arm_length: f64,
    pub thrust_coeff: f64,
    pub drag_coeff: f64,
    pub rotor_inertia: f64,
    pub max_rotor_speed: f64,
    pub gravity: f64,
    /// Orbit radius `r_d` [m] and altitude `z_d` [m].
    pub radius: f64,
    pub altitude: f64,
    #[serde(rename = "k_G")]
    pub k_g: f64,
    pub direction: Direction,
    pub k_chi: f64,
    pub max_course_rate: f64,
    pub tau_chi: f64,
    pub v_ref: f64,
    pub k_v: f64,
    pub a_max: f64,
    pub k_rad: f64,
    /// Tilt command limits [deg].
    pub max_roll: f64,
    pub max_pitch: f64,
}

impl Default for QuadSection {
    fn default() -> Self {
        let p = QuadrotorParams::default();
        let o = OuterLoopParams::default();
        Self {
            mass: p.mass,
            inertia_x: p.inertia[0],
            inertia_y: p.inertia[1],
            inertia_z: p.inertia[2],
            arm_length: p.arm_length,
            thrust_coeff: p.thrust_coeff,
            drag_coeff: p.drag_coeff,
            rotor_inertia: p.rotor_inertia,
            max_rotor_speed: p.max_rotor_speed,
            gravity: p.gravity,
            radius: o.radius,
            altitude: o.altitude,
            k_g: o.shaping_gain,
            direction: o.direction.into(),
            k_chi: o.course_gain,
            max_course_rate: o.max_course_rate,
            tau_chi: o.course_filter_tau,
            v_ref: o.v_ref,
            k_v: o.velocity_gain,
            a_max: o.max_accel,
            k_rad: o.radial_gain,
            max_roll: deg(o.max_roll),
            max_pitch: deg(o.max_pitch),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InnerSection {
    pub tilt_kp: f64,
    pub tilt_kd: f64,
    pub yaw_kp: f64,
    pub yaw_kd: f64,
    pub altitude_kp: f64,
    pub altitude_kd: f64,
    pub max_vertical_accel: f64,
    pub thrust_headroom: f64,
}

impl Default for InnerSection {
    fn default() -> Self {
        let g = InnerLoopGains::default();
        Self {
            tilt_kp: g.tilt_kp,
            tilt_kd: g.tilt_kd,
            yaw_kp: g.yaw_kp,
            yaw_kd: g.yaw_kd,
            altitude_kp: g.altitude_kp,
            altitude_kd: g.altitude_kd,
            max_vertical_accel: g.max_vertical_accel,
            thrust_headroom: g.thrust_headroom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PositionSection {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Default for PositionSection {
    fn default() -> Self {
        let [x, y, z] = SixDofConfig::default().initial_position;
        Self { x, y, z }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SixDofSim {
    /// Guidance/control period [s].
    pub control_dt: f64,
    /// Rigid-body RK4 substeps per control period.
    pub substeps: usize,
    pub t_final: f64,
    pub output: PathBuf,
}

impl Default for SixDofSim {
    fn default() -> Self {
        let c = SixDofConfig::default();
        Self {
            control_dt: c.control_dt,
            substeps: c.substeps,
            t_final: c.t_final,
            output: PathBuf::from("out"),
        }
    }
}

/// A 6DOF inspection file. Every key is optional and defaults to the OS4
/// reference configuration.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SixDofFile {
    pub quad: QuadSection,
    pub inner: InnerSection,
    pub initial: PositionSection,
    pub sim: SixDofSim,
}

impl SixDofFile {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        parse_toml(text)
    }

    pub fn load(path: &Path) -> Result<Self, AppError> {
        let file = Self::from_toml(&read(path)?)?;
        file.build()?;
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("6DOF config is always representable as TOML")
    }

    pub fn apply_overrides(&mut self, dt: Option<f64>, out: Option<&Path>) {
        if let Some(dt) = dt {
            self.sim.control_dt = dt;
        }
        if let Some(out) = out {
            self.sim.output = out.to_path_buf();
        }
    }

    pub fn build(&self) -> Result<SixDofConfig, ConfigError> {
        let q = &self.quad;
        let vehicle = QuadrotorParams {
            mass: q.mass,
            inertia: [q.inertia_x, q.inertia_y, q.inertia_z],
            arm_length: q.arm_length,
            thrust_coeff: q.thrust_coeff,
            drag_coeff: q.drag_coeff,
            rotor_inertia: q.rotor_inertia,
            max_rotor_speed: q.max_rotor_speed,
            gravity: q.gravity,
        };
        vehicle.validate().map_err(|e| setting_error("quad", e))?;
        let outer = OuterLoopParams {
            course_gain: q.k_chi,
            max_course_rate: q.max_course_rate,
            course_filter_tau: q.tau_chi,
            v_ref: q.v_ref,
            velocity_gain: q.k_v,
            max_accel: q.a_max,
            radial_gain: q.k_rad,
            max_roll: rad(q.max_roll),
            max_pitch: rad(q.max_pitch),
            radius: q.radius,
            altitude: q.altitude,
            shaping_gain: q.k_g,
            direction: q.direction.into(),
        };
        outer.validate().map_err(|e| setting_error("quad", e))?;

        let i = &self.inner;
        for (name, v) in [
            ("tilt_kp", i.tilt_kp),
            ("tilt_kd", i.tilt_kd),
            ("yaw_kp", i.yaw_kp),
            ("yaw_kd", i.yaw_kd),
            ("altitude_kp", i.altitude_kp),
            ("altitude_kd", i.altitude_kd),
            ("max_vertical_accel", i.max_vertical_accel),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::new(format!("inner.{name}"), format!("must be positive, got {v}")));
            }
        }
        if !(i.thrust_headroom > 0.0 && i.thrust_headroom <= 1.0) {
            return Err(ConfigError::new("inner.thrust_headroom", "must lie in (0, 1]"));
        }
        let inner = InnerLoopGains {
            tilt_kp: i.tilt_kp,
            tilt_kd: i.tilt_kd,
            yaw_kp: i.yaw_kp,
            yaw_kd: i.yaw_kd,
            altitude_kp: i.altitude_kp,
            altitude_kd: i.altitude_kd,
            max_vertical_accel: i.max_vertical_accel,
            thrust_headroom: i.thrust_headroom,
        };

        let p = &self.initial;
        if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
            return Err(ConfigError::new("initial", "position must be finite"));
        }
        if !(p.x.hypot(p.y) > MIN_RANGE) {
            return Err(ConfigError::new("initial", "start must not lie on the orbit axis"));
        }
        let s = &self.sim;
        if !(s.control_dt > 0.0 && s.control_dt.is_finite()) {
            return Err(ConfigError::new("sim.control_dt", "must be positive"));
        }
        if s.substeps == 0 {
            return Err(ConfigError::new("sim.substeps", "must be at least 1"));
        }
        if !(s.t_final >= s.control_dt && s.t_final.is_finite()) {
            return Err(ConfigError::new("sim.t_final", "must be finite and at least one control step"));
        }
        Ok(SixDofConfig {
            vehicle,
            outer,
            inner,
            initial_position: [p.x, p.y, p.z],
            control_dt: s.control_dt,
            substeps: s.substeps,
            t_final: s.t_final,
        })
    }
}

fn setting_error(section: &str, e: SimError) -> ConfigError {
    match e {
        SimError::InvalidSetting { name, reason } => ConfigError::new(format!("{section}.{name}"), reason),
        other => ConfigError::new(section, other.to_string()),
    }
}
