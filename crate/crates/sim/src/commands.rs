//! The CLI verbs. Each `*_report` function computes; each `cmd_*` function
//! also writes its CSV files and returns their paths.

use std::path::{Path, PathBuf};

use glass_core::arcsine::{ArcsineError, ArcsineParams};
use glass_core::curve::StandoffCurve;
use glass_core::planar::{run_scenario, GuidanceLaw, SimTrace};
use glass_core::quad::{run_6dof_inspection, QuadTrace};
use rayon::prelude::*;

use crate::config::{ScenarioConfig, SixDofFile};
use crate::export::{planar_trace_csv, quad_trace_csv, write_output};
use crate::report::{summary_csv, SummaryRow};
use crate::tables::{ideal_csv, ideal_table, mismatch_csv, mismatch_table, IdealRow, MismatchRow};
use crate::{AppError, ConfigError};

/// Output file prefix: the config file stem.
pub fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".into())
}

pub fn run_report(cfg: &ScenarioConfig) -> Result<(SimTrace, SummaryRow), AppError> {
    let trace = run_scenario(&cfg.scenario()?)?;
    let row = SummaryRow::from_trace("initial", &trace);
    Ok((trace, row))
}

pub fn cmd_run(cfg: &ScenarioConfig, stem: &str) -> Result<(Vec<PathBuf>, SummaryRow), AppError> {
    let (trace, row) = run_report(cfg)?;
    let dir = &cfg.sim.output;
    let files = vec![
        write_output(dir, &format!("{stem}_trace.csv"), &planar_trace_csv(&trace))?,
        write_output(dir, &format!("{stem}_summary.csv"), &summary_csv(std::slice::from_ref(&row)))?,
    ];
    Ok((files, row))
}

/// Gains from the command line, falling back to `sweep.gains`.
pub fn sweep_gains(cfg: &ScenarioConfig, cli: &[f64]) -> Result<Vec<f64>, ConfigError> {
    let gains = if cli.is_empty() {
        cfg.sweep.as_ref().map(|s| s.gains.clone()).unwrap_or_default()
    } else {
        cli.to_vec()
    };
    if gains.is_empty() {
        return Err(ConfigError::new("sweep.gains", "no gains given (use --gains or sweep.gains)"));
    }
    for (i, &g) in gains.iter().enumerate() {
        if !(g > 0.0 && g.is_finite()) {
            return Err(ConfigError::new(format!("sweep.gains[{i}]"), format!("must be positive, got {g}")));
        }
    }
    Ok(gains)
}

/// Runs every start × gain pair. Row order is start-major, then gain, and
/// does not depend on scheduling.
pub fn sweep_report(cfg: &ScenarioConfig, gains: &[f64]) -> Result<Vec<(SimTrace, SummaryRow)>, AppError> {
    let mut jobs = Vec::new();
    for start in cfg.starts() {
        for &gain in gains {
            let name = format!("{}_k{gain}", start.name);
            jobs.push((name, cfg.scenario_at(&start, gain)?));
        }
    }
    jobs.into_par_iter()
        .map(|(name, scenario)| {
            let trace = run_scenario(&scenario)?;
            let row = SummaryRow::from_trace(name, &trace);
            Ok((trace, row))
        })
        .collect()
}

pub fn cmd_sweep(cfg: &ScenarioConfig, gains: &[f64], stem: &str) -> Result<(Vec<PathBuf>, Vec<SummaryRow>), AppError> {
    let results = sweep_report(cfg, gains)?;
    let dir = &cfg.sim.output;
    let mut files = Vec::new();
    for (trace, row) in &results {
        files.push(write_output(dir, &format!("{stem}_{}.csv", row.scenario), &planar_trace_csv(trace))?);
    }
    let rows: Vec<SummaryRow> = results.into_iter().map(|(_, r)| r).collect();
    files.push(write_output(dir, &format!("{stem}_sweep.csv"), &summary_csv(&rows))?);
    Ok((files, rows))
}

/// GLASS against the heading-matched arcsine baseline.
#[derive(Debug, Clone)]
pub struct Comparison {
    /// Matched arcsine gain `k_D` (normalized error).
    pub arcsine_gain: f64,
    pub glass: SimTrace,
    pub arcsine: SimTrace,
    pub rows: [SummaryRow; 2],
}

impl Comparison {
    /// GLASS enters the tube strictly first; a run that never enters counts
    /// as infinitely late.
    pub fn glass_faster(&self) -> bool {
        let t = |tr: &SimTrace| tr.tube_entry.unwrap_or(f64::INFINITY);
        t(&self.glass) < t(&self.arcsine)
    }
}

/// Runs both laws from the `[initial]` state. The `law` and `k_D` keys are
/// ignored: the baseline gain is always matched to `k_G`.
pub fn compare_report(cfg: &ScenarioConfig) -> Result<Comparison, AppError> {
    let mut glass_cfg = cfg.clone();
    glass_cfg.guidance.law = crate::config::Law::Glass;
    let glass_scenario = glass_cfg.scenario()?;
    let curve = glass_scenario.curve;
    if !matches!(curve, StandoffCurve::Circle { .. }) {
        return Err(ConfigError::new("curve", "comparison needs a circle curve").into());
    }
    let (x, y) = glass_scenario.initial_position;
    let arcsine_gain = cfg.matched_gain(&curve, x.hypot(y), cfg.guidance.k_g, "initial")?;
    let mut arcsine_scenario = glass_scenario.clone();
    arcsine_scenario.law = GuidanceLaw::Arcsine(ArcsineParams {
        gain: arcsine_gain,
        error: ArcsineError::Normalized,
        direction: cfg.guidance.direction.into(),
    });

    let (glass, arcsine) = rayon::join(|| run_scenario(&glass_scenario), || run_scenario(&arcsine_scenario));
    let (glass, arcsine) = (glass?, arcsine?);
    let rows = [
        SummaryRow::from_trace("glass", &glass),
        SummaryRow::from_trace("arcsine", &arcsine),
    ];
    Ok(Comparison {
        arcsine_gain,
        glass,
        arcsine,
        rows,
    })
}

pub fn cmd_compare(cfg: &ScenarioConfig, stem: &str) -> Result<(Vec<PathBuf>, Comparison), AppError> {
    let cmp = compare_report(cfg)?;
    let dir = &cfg.sim.output;
    let files = vec![
        write_output(dir, &format!("{stem}_glass.csv"), &planar_trace_csv(&cmp.glass))?,
        write_output(dir, &format!("{stem}_arcsine.csv"), &planar_trace_csv(&cmp.arcsine))?,
        write_output(dir, &format!("{stem}_compare.csv"), &summary_csv(&cmp.rows))?,
    ];
    Ok((files, cmp))
}

pub fn tables_report() -> Result<(Vec<IdealRow>, Vec<MismatchRow>), AppError> {
    let (ideal, mismatch) = rayon::join(ideal_table, mismatch_table);
    Ok((ideal?, mismatch?))
}

pub fn cmd_tables(dir: &Path) -> Result<(Vec<PathBuf>, Vec<IdealRow>, Vec<MismatchRow>), AppError> {
    let (ideal, mismatch) = tables_report()?;
    let files = vec![
        write_output(dir, "table_ideal.csv", &ideal_csv(&ideal))?,
        write_output(dir, "table_mismatch.csv", &mismatch_csv(&mismatch))?,
    ];
    Ok((files, ideal, mismatch))
}

pub fn sixdof_report(file: &SixDofFile) -> Result<QuadTrace, AppError> {
    Ok(run_6dof_inspection(&file.build()?)?)
}

pub fn cmd_sixdof(file: &SixDofFile, stem: &str) -> Result<(Vec<PathBuf>, QuadTrace), AppError> {
    let trace = sixdof_report(file)?;
    let path = write_output(&file.sim.output, &format!("{stem}_6dof.csv"), &quad_trace_csv(&trace))?;
    Ok((vec![path], trace))
}
