//! CSV export. Floats are written in shortest round-trip form so a trace
//! reloads bit-for-bit; missing values are empty fields.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use glass_core::planar::SimTrace;
use glass_core::quad::QuadTrace;

use crate::AppError;

pub const PLANAR_HEADER: &str = "t,x,y,d,gamma,chi,lambda,e,chidot,kappa";
pub const QUAD_HEADER: &str = "t,x,y,z,phi,theta,psi,U1,U2,U3,U4,d,e,chi,chid";

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn push_row(out: &mut String, fields: &[f64]) {
    for (i, v) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:?}");
    }
    out.push('\n');
}

pub fn planar_trace_csv(trace: &SimTrace) -> String {
    let mut out = format!("{PLANAR_HEADER}\n");
    for r in &trace.rows {
        push_row(
            &mut out,
            &[
                r.t,
                r.x,
                r.y,
                r.range,
                r.los,
                r.course,
                r.look_angle,
                r.error,
                r.course_rate,
                r.curvature,
            ],
        );
    }
    out
}

pub fn quad_trace_csv(trace: &QuadTrace) -> String {
    let mut out = format!("{QUAD_HEADER}\n");
    for r in &trace.rows {
        let [x, y, z] = r.position;
        let [phi, theta, psi] = r.attitude;
        let [u1, u2, u3, u4] = r.inputs;
        push_row(
            &mut out,
            &[
                r.t,
                x,
                y,
                z,
                phi,
                theta,
                psi,
                u1,
                u2,
                u3,
                u4,
                r.range,
                r.error,
                r.course,
                r.commanded_course,
            ],
        );
    }
    out
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, AppError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| AppError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(io(&path))?;
    Ok(path)
}
