//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

use glass_core::angle::{deg, rad, wrap};
use glass_core::arcsine::{arcsine_commanded_course, match_arcsine_gain, ArcsineError, ArcsineParams};
use glass_core::curve::StandoffCurve;
use glass_core::glass::*;
use glass_core::integrate::rk4_step;
use glass_core::planar::{CourseChannel, EngagementState};
use glass_core::quad::*;
use glass_sim::commands::{compare_report, Comparison};
use glass_sim::config::{Channel, ScenarioConfig};
use glass_sim::tables::{ideal, ideal_table, mismatch, mismatch_table, IdealRow, MismatchRow};
use proptest::prelude::RngExt;
use proptest::test_runner::{RngAlgorithm, TestRng};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u8) -> TestRng {
    TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32])
}

fn ideal_rows() -> &'static [IdealRow] {
    static ROWS: OnceLock<Vec<IdealRow>> = OnceLock::new();
    ROWS.get_or_init(|| ideal_table().expect("ideal table runs"))
}

fn mismatch_rows() -> &'static [MismatchRow] {
    static ROWS: OnceLock<Vec<MismatchRow>> = OnceLock::new();
    ROWS.get_or_init(|| mismatch_table().expect("mismatch table runs"))
}

fn sixdof() -> &'static QuadTrace {
    static TRACE: OnceLock<QuadTrace> = OnceLock::new();
    TRACE.get_or_init(|| run_6dof_inspection(&SixDofConfig::default()).expect("6DOF run"))
}

fn scenario_file(name: &str) -> ScenarioConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name);
    ScenarioConfig::load(&path).expect("shipped scenario loads")
}

fn comparison() -> &'static Comparison {
    static CMP: OnceLock<Comparison> = OnceLock::new();
    CMP.get_or_init(|| compare_report(&scenario_file("compare.toml")).expect("comparison runs"))
}

fn table_ideal_analytic() -> Check {
    let rows = ideal_rows();
    ensure(rows.len() == 10, || format!("{} cells", rows.len()))?;
    let mut worst: f64 = 0.0;
    for r in rows {
        let d = (r.t_analytic - r.published).abs();
        worst = worst.max(d);
        ensure(d <= ideal::ANALYTIC_TOL, || {
            format!("{} k_G={}: {} vs {}", r.start.name(), r.gain, r.t_analytic, r.published)
        })?;
    }
    Ok(format!("10 cells, max |dT| = {worst:.2e} s"))
}

fn table_ideal_simulated() -> Check {
    let mut worst: f64 = 0.0;
    for r in ideal_rows() {
        let t = r.t_measured.ok_or_else(|| format!("{} k_G={}: no tube entry", r.start.name(), r.gain))?;
        for reference in [r.t_analytic_exact, r.t_analytic] {
            let rel = (t - reference).abs() / reference;
            worst = worst.max(rel);
            ensure(rel <= ideal::SIM_REL_TOL, || {
                format!("{} k_G={}: T_sim {t} vs T_ana {reference}", r.start.name(), r.gain)
            })?;
        }
    }
    Ok(format!("10 cells at dt = 0.01, max rel err = {worst:.2e}"))
}

fn oracle_equivalence() -> Check {
    let mut rng = rng(3);
    let dt = 1e-3;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let e0 = rng.random_range(-500.0..500.0);
        let gain: f64 = rng.random_range(0.005..0.2);
        let p = GuidanceParams::new(gain, OrbitDirection::Ccw, 20.0, 0.5, 0.05).map_err(|e| e.to_string())?;
        let t_end = 2.0 * tube_entry_time(e0, &p).map_err(|e| e.to_string())?;
        let mut e = [e0];
        let n = (t_end / dt).ceil() as usize;
        for i in 0..n {
            e = rk4_step(i as f64 * dt, &e, dt, |_, s| [error_rate(s[0], &p)]);
            let d = (e[0] - error_trajectory_oracle(e0, (i + 1) as f64 * dt, &p)).abs();
            worst = worst.max(d);
            ensure(d < 1e-6, || format!("e0={e0} k_G={gain}: |de| = {d} at step {i}"))?;
        }
    }
    Ok(format!("20 random cases, max |de| = {worst:.2e} m"))
}

fn gain_matching() -> Check {
    let k = match_arcsine_gain(650.0, 200.0, 0.007).map_err(|e| e.to_string())?;
    ensure((k + 1.439).abs() <= 1e-3, || format!("k_D = {k}"))?;

    let cmp = comparison();
    ensure(cmp.arcsine_gain == k, || format!("comparison used k_D = {}", cmp.arcsine_gain))?;
    let d0 = wrap(cmp.glass.rows[0].course - cmp.arcsine.rows[0].course).abs();
    ensure(d0 <= 1e-10, || format!("initial courses differ by {d0}"))?;

    let curve = StandoffCurve::circle(200.0).map_err(|e| e.to_string())?;
    let mut worst = d0;
    for dir in [OrbitDirection::Ccw, OrbitDirection::Cw] {
        let glass = GuidanceParams::new(0.007, dir, 20.0, 0.5, 0.05).map_err(|e| e.to_string())?;
        for &(x, y) in &[(650.0, 0.0), (-300.0, 500.0), (0.0, -900.0), (210.0, 3.0), (900.0, 700.0)] {
            let state = EngagementState::from_position(x, y, 0.0);
            let params = ArcsineParams {
                gain: match_arcsine_gain(state.range, 200.0, glass.gain).map_err(|e| e.to_string())?,
                error: ArcsineError::Normalized,
                direction: dir,
            };
            let a = arcsine_commanded_course(&state, &curve, &params).map_err(|e| e.to_string())?;
            let g = commanded_course(&state, &curve, &glass).map_err(|e| e.to_string())?;
            let d = wrap(a - g).abs();
            worst = worst.max(d);
            ensure(d <= 1e-10, || format!("({x}, {y}) {dir:?}: headings differ by {d}"))?;
        }
    }
    Ok(format!("k_D = {k:.5}, max heading mismatch = {worst:.1e} rad"))
}

fn table_mismatch() -> Check {
    let rows = mismatch_rows();
    ensure(rows.len() == 6, || format!("{} rows", rows.len()))?;
    let mut worst: f64 = 0.0;
    for r in rows {
        ensure(r.analytic_pass, || {
            format!("{} chi0={}: T_ana {} vs {}", r.start.name(), r.initial_course_deg, r.t_analytic, r.published_analytic)
        })?;
        let rel = r.rel_err.ok_or_else(|| format!("{} chi0={}: no tube entry", r.start.name(), r.initial_course_deg))?;
        worst = worst.max(rel);
        ensure(rel <= mismatch::SIM_REL_TOL, || {
            format!("{} chi0={}: T_sim {:?} vs {}", r.start.name(), r.initial_course_deg, r.t_measured, r.published_sim)
        })?;
    }
    Ok(format!("T_ana 25.519 / 16.977 matched, 6 rows, max T_sim rel err = {worst:.3}"))
}

fn look_angle_properties() -> Check {
    let mut rng = rng(6);
    let (speed, h) = (20.0, 1e-5);
    for i in 0..1_000_000 {
        let e: f64 = if i % 2 == 0 {
            rng.random_range(-500.0..500.0)
        } else {
            let sign = if rng.random_range(0.0..1.0) < 0.5 { -1.0 } else { 1.0 };
            sign * 10f64.powf(rng.random_range(-3.0..6.0))
        };
        let a: f64 = rng.random_range(-50.0..50.0);
        let gain: f64 = rng.random_range(0.005..0.2);
        let arg = -(gain * e).tanh() / (1.0 + a * a).sqrt();
        ensure(arg.abs() < 1.0, || format!("acos argument {arg} at e={e}, a={a}"))?;
        let expected = -speed * (gain * e).tanh();
        let bound = look_angle_slope_bound(a, gain);
        for dir in [OrbitDirection::Ccw, OrbitDirection::Cw] {
            let p = GuidanceParams {
                gain,
                direction: dir,
                ground_speed: speed,
                max_turn_rate: 0.5,
                tube: 0.05,
            };
            let sol = solve_look_angle(e, a, &p);
            ensure(sol.residual < 1e-12, || format!("residual {} at e={e}, a={a}", sol.residual))?;
            let rate = speed * (sol.look_angle.cos() - a * sol.look_angle.sin());
            ensure((rate - expected).abs() <= 1e-10, || format!("rate {rate} vs {expected} at e={e}, a={a}"))?;
            let slope = wrap(solve_look_angle(e + h, a, &p).look_angle - solve_look_angle(e - h, a, &p).look_angle) / (2.0 * h);
            ensure(slope.abs() <= bound + 1e-9, || format!("slope {slope} > {bound} at e={e}, a={a}"))?;
        }
    }
    Ok("1e6 samples x 2 branches: feasibility, residual, rate, slope bound".into())
}

fn lyapunov_properties() -> Check {
    let mut rows_checked = 0;
    for r in ideal_rows() {
        let gain = r.gain;
        let p = GuidanceParams::new(gain, OrbitDirection::Ccw, 20.0, 0.5, ideal::TUBE).map_err(|e| e.to_string())?;
        let e0 = r.trace.initial_error();
        let mut prev = (r.published_error, e0);
        let mut prev_v = (lyapunov_value(prev.0, gain), lyapunov_value(prev.1, gain));
        for row in &r.trace.rows[1..] {
            let oracle = error_trajectory_oracle(r.published_error, row.t, &p);
            for (label, e, last, last_v) in [("oracle", oracle, prev.0, prev_v.0), ("simulation", row.error, prev.1, prev_v.1)] {
                if last.abs() < 1e-12 {
                    continue;
                }
                let v = lyapunov_value(e, gain);
                ensure(e.signum() == last.signum(), || format!("{label} sign flip at t={}", row.t))?;
                ensure(e.abs() <= last.abs(), || format!("{label} |e| grew at t={}: {last} -> {e}", row.t))?;
                ensure(v < last_v, || format!("{label} V not decreasing at t={}: {last_v} -> {v}", row.t))?;
            }
            prev = (oracle, row.error);
            prev_v = (lyapunov_value(oracle, gain), lyapunov_value(row.error, gain));
            rows_checked += 1;
        }
    }
    Ok(format!("10 scenarios, {rows_checked} samples: sign fixed, |e| and V decreasing"))
}

fn saturation_contract() -> Check {
    let mut first_order: Vec<(String, f64, &[glass_core::planar::TraceRow])> = mismatch_rows()
        .iter()
        .map(|r| (format!("{} chi0={}", r.start.name(), r.initial_course_deg), r.trace.scenario.channel, &r.trace.rows[..]))
        .filter_map(|(n, ch, rows)| match ch {
            CourseChannel::FirstOrder { max_rate, .. } => Some((n, max_rate, rows)),
            CourseChannel::Ideal => None,
        })
        .collect();
    let mut cfg = scenario_file("compare.toml");
    cfg.sim.channel = Channel::FirstOrder;
    cfg.guidance.epsilon = 0.5;
    let lagged = compare_report(&cfg).map_err(|e| e.to_string())?;
    let limit = cfg.vehicle.max_turn_rate;
    first_order.push(("compare glass".into(), limit, &lagged.glass.rows));
    first_order.push(("compare arcsine".into(), limit, &lagged.arcsine.rows));
    let mut planar_rows = 0;
    for (name, max_rate, rows) in &first_order {
        for row in rows.iter() {
            ensure(row.course_rate.abs() <= max_rate + 1e-12, || {
                format!("{name}: |chi_dot| = {} at t={}", row.course_rate, row.t)
            })?;
        }
        planar_rows += rows.len();
    }

    let trace = sixdof();
    let outer = trace.config.outer;
    let omega_max = trace.config.vehicle.max_rotor_speed;
    ensure(omega_max == 600.0, || format!("rotor limit {omega_max}"))?;
    let mut max_tilt: f64 = 0.0;
    for row in &trace.rows {
        ensure(row.course_rate.abs() <= outer.max_course_rate + 1e-12, || {
            format!("6DOF |chi_dot| = {} at t={}", row.course_rate, row.t)
        })?;
        let [roll_d, pitch_d] = row.tilt_command;
        ensure(roll_d.abs() <= rad(40.0) + 1e-12 && pitch_d.abs() <= rad(40.0) + 1e-12, || {
            format!("tilt command ({}, {}) deg at t={}", deg(roll_d), deg(pitch_d), row.t)
        })?;
        max_tilt = max_tilt.max(row.attitude[0].abs()).max(row.attitude[1].abs());
        ensure(row.rotor_speeds.iter().all(|w| (0.0..=600.0).contains(w)), || {
            format!("rotor speeds {:?} at t={}", row.rotor_speeds, row.t)
        })?;
    }
    ensure(max_tilt < rad(45.0), || format!("realized tilt {} deg", deg(max_tilt)))?;
    Ok(format!(
        "{} first-order rows, {} 6DOF rows; tilt commands <= 40 deg, realized max {:.2} deg",
        planar_rows,
        trace.rows.len(),
        deg(max_tilt)
    ))
}

fn sixdof_properties() -> Check {
    let trace = sixdof();
    let m = trace.orbit_metrics();
    let r_d = trace.config.outer.radius;
    ensure((m.mean_radius - r_d).abs() <= 0.05 * r_d, || format!("mean radius {}", m.mean_radius))?;
    ensure(m.max_altitude_error < 0.1, || format!("altitude error {}", m.max_altitude_error))?;
    for i in 1..4 {
        ensure(m.mean_inputs[i].abs() < 0.05 * m.peak_inputs[i], || {
            format!("U{} mean {} vs peak {}", i + 1, m.mean_inputs[i], m.peak_inputs[i])
        })?;
    }
    let vehicle = trace.config.vehicle;
    ensure(m.mean_inputs[0] > vehicle.hover_thrust(), || format!("U1 mean {}", m.mean_inputs[0]))?;
    let band = m.los_rate_spread / m.mean_los_rate.abs();
    ensure(band <= 0.02, || format!("LOS rate band {band}"))?;
    ensure((m.lap_period * m.mean_los_rate.abs() - 2.0 * PI).abs() < 0.05, || {
        format!("lap period {} at rate {}", m.lap_period, m.mean_los_rate)
    })?;

    let hover = ControlInputs {
        thrust: vehicle.hover_thrust(),
        ..Default::default()
    };
    let mut s = QuadrotorState::at_rest([0.0, 0.0, 10.0], 0.0);
    for _ in 0..10_000 {
        s = step_quadrotor(&s, &hover, 0.0, &vehicle, 1e-3).map_err(|e| e.to_string())?;
    }
    let ke = s.kinetic_energy(&vehicle);
    ensure(ke < 1e-9, || format!("hover kinetic energy {ke}"))?;
    Ok(format!(
        "radius {:.3} m, |z-10| {:.1e} m, |mean U2..U4|/peak {:.1e}, LOS-rate band {:.2e}, hover KE {:.1e} J",
        m.mean_radius,
        m.max_altitude_error,
        (1..4).map(|i| m.mean_inputs[i].abs() / m.peak_inputs[i]).fold(0.0, f64::max),
        band,
        ke
    ))
}

fn comparative_ordering() -> Check {
    let cmp = comparison();
    let g = cmp.glass.tube_entry.ok_or("GLASS never entered the tube")?;
    let a = cmp.arcsine.tube_entry.unwrap_or(f64::INFINITY);
    ensure(cmp.glass_faster(), || format!("GLASS {g} s vs arcsine {a} s"))?;
    Ok(format!("GLASS {g:.3} s < arcsine {a:.3} s"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Ideal-tracking table, closed-form settling times", table_ideal_analytic),
        ("Ideal-tracking table, simulated tube entry within 2%", table_ideal_simulated),
        ("RK4 error dynamics match the exact trajectory", oracle_equivalence),
        ("Heading-matched arcsine gain", gain_matching),
        ("Heading-mismatch table, first-order course channel", table_mismatch),
        ("Look-angle solution: feasibility, residual, rate, slope", look_angle_properties),
        ("Lyapunov decrease along the error trajectories", lyapunov_properties),
        ("Turn-rate, tilt and rotor saturation contract", saturation_contract),
        ("6DOF orbit capture and hover balance", sixdof_properties),
        ("GLASS enters the tube before the arcsine baseline", comparative_ordering),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}: {title} -- {detail} ({secs:.1} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {title} -- {why} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1} s",
        criteria.len() - failed,
        suite.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
