use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use glass_core::angle::deg;
use glass_sim::commands::{cmd_compare, cmd_run, cmd_sixdof, cmd_sweep, cmd_tables, stem, sweep_gains};
use glass_sim::config::{ScenarioConfig, SixDofFile};
use glass_sim::report::summary_csv;
use glass_sim::tables::{ideal_csv, mismatch_csv};
use glass_sim::AppError;

/// Standoff-tracking guidance simulator.
#[derive(Debug, Parser)]
#[command(name = "glass", version, about)]
struct Cli {
    /// Override the integration (planar) or control (6DOF) step [s].
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Override the output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Accepted for interface stability; all runs are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one planar scenario.
    Run { config: PathBuf },
    /// Run a scenario for each gain and each start position.
    Sweep {
        config: PathBuf,
        /// Shaping gains k_G [1/m]; defaults to `sweep.gains`.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        gains: Vec<f64>,
    },
    /// Compare GLASS with the heading-matched arcsine baseline.
    Compare { config: PathBuf },
    /// Regenerate the built-in settling-time tables.
    Tables,
    /// Run the quadrotor inspection orbit.
    Sixdof { config: PathBuf },
}

fn load(cli: &Cli, path: &PathBuf) -> Result<ScenarioConfig, AppError> {
    let mut cfg = ScenarioConfig::load(path)?;
    cfg.apply_overrides(cli.dt, cli.out.as_deref());
    cfg.validate()?;
    Ok(cfg)
}

fn report_files(files: &[PathBuf]) {
    for f in files {
        eprintln!("wrote {}", f.display());
    }
}

fn execute(cli: &Cli) -> Result<(), AppError> {
    match &cli.command {
        Command::Run { config } => {
            let cfg = load(cli, config)?;
            let (files, row) = cmd_run(&cfg, &stem(config))?;
            report_files(&files);
            print!("{}", summary_csv(&[row]));
        }
        Command::Sweep { config, gains } => {
            let cfg = load(cli, config)?;
            let gains = sweep_gains(&cfg, gains)?;
            let (files, rows) = cmd_sweep(&cfg, &gains, &stem(config))?;
            report_files(&files);
            print!("{}", summary_csv(&rows));
        }
        Command::Compare { config } => {
            let cfg = load(cli, config)?;
            let (files, cmp) = cmd_compare(&cfg, &stem(config))?;
            report_files(&files);
            println!("k_D = {}", cmp.arcsine_gain);
            print!("{}", summary_csv(&cmp.rows));
            println!(
                "glass reaches the tube {}",
                if cmp.glass_faster() { "first" } else { "no earlier than arcsine" }
            );
        }
        Command::Tables => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("out"));
            let (files, ideal, mismatch) = cmd_tables(&dir)?;
            report_files(&files);
            print!("{}\n{}", ideal_csv(&ideal), mismatch_csv(&mismatch));
        }
        Command::Sixdof { config } => {
            let mut file = SixDofFile::load(config)?;
            file.apply_overrides(cli.dt, cli.out.as_deref());
            let (files, trace) = cmd_sixdof(&file, &stem(config))?;
            report_files(&files);
            let m = trace.orbit_metrics();
            let radius = trace.config.outer.radius;
            println!("final-lap mean radius   {:.4} m (target {radius} m)", m.mean_radius);
            println!("final-lap max |z - z_d| {:.3e} m", m.max_altitude_error);
            println!("final-lap mean U        {:?}", m.mean_inputs);
            println!("peak |U|                {:?}", m.peak_inputs);
            println!("max |chi_dot|           {:.4} rad/s", m.max_course_rate);
            println!("max tilt command        {:.3} deg", deg(m.max_tilt_command));
            println!("max realized tilt       {:.3} deg", deg(m.max_tilt));
            println!(
                "rotor speed range       [{:.2}, {:.2}] rad/s",
                m.rotor_speed_range.0, m.rotor_speed_range.1
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
