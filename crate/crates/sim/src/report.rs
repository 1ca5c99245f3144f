//! Per-scenario summary rows: analytic vs measured tube entry and peak
//! turn rate / curvature.

use glass_core::glass::tube_entry_time;
use glass_core::planar::{max_curvature, max_turn_rate, GuidanceLaw, SimTrace};

use crate::export::{fmt_f64, fmt_opt};

pub const SUMMARY_HEADER: &str = "scenario,law,k_G,e0,T_ana,T_sim,rel_err,max_chidot,max_kappa";

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub scenario: String,
    pub law: &'static str,
    /// The law's own gain: `k_G` for GLASS, `k_D` for the arcsine baseline.
    pub gain: f64,
    pub initial_error: f64,
    /// Closed-form tube-entry time; GLASS only.
    pub t_analytic: Option<f64>,
    /// Measured tube-entry time; `None` if the tube was never reached.
    pub t_measured: Option<f64>,
    /// `|T_sim − T_ana| / T_ana`.
    pub rel_err: Option<f64>,
    pub max_course_rate: f64,
    pub max_curvature: f64,
}

impl SummaryRow {
    pub fn from_trace(scenario: impl Into<String>, trace: &SimTrace) -> Self {
        let e0 = trace.initial_error();
        let t_analytic = match &trace.scenario.law {
            GuidanceLaw::Glass(p) => tube_entry_time(e0, p).ok(),
            GuidanceLaw::Arcsine(_) => None,
        };
        let t_measured = trace.tube_entry;
        Self {
            scenario: scenario.into(),
            law: trace.scenario.law.name(),
            gain: trace.scenario.law.gain(),
            initial_error: e0,
            t_analytic,
            t_measured,
            rel_err: relative_error(t_measured, t_analytic),
            max_course_rate: max_turn_rate(&trace.rows),
            max_curvature: max_curvature(&trace.rows),
        }
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            self.scenario,
            self.law,
            fmt_f64(self.gain),
            fmt_f64(self.initial_error),
            fmt_opt(self.t_analytic),
            fmt_opt(self.t_measured),
            fmt_opt(self.rel_err),
            fmt_f64(self.max_course_rate),
            fmt_f64(self.max_curvature),
        )
    }
}

/// `|measured − reference| / reference`, zero when both are exactly zero.
pub fn relative_error(measured: Option<f64>, reference: Option<f64>) -> Option<f64> {
    let (m, r) = (measured?, reference?);
    if r == 0.0 {
        (m == 0.0).then_some(0.0)
    } else {
        Some((m - r).abs() / r)
    }
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for row in rows {
        out.push_str(&row.csv_line());
    }
    out
}
