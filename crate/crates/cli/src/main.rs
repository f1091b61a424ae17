use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser};
use tuav_sim::{parse_with_overrides, run, CliError, Overrides, Subcommand};

/// Air-to-ground link sweeps and coverage studies for a tethered UAV.
///
/// Settings resolve as flags > config file > built-in defaults. Without
/// --out, CSV goes to $TUAV_SIM_OUT_DIR/<subcommand>.csv or ./<subcommand>.csv.
#[derive(Parser)]
#[command(name = "tuav-sim", version)]
enum Cli {
    /// LoS probability against elevation angle.
    PlosSweep(Common),
    /// Received power against distance, with and without beamforming.
    PowerSweep(Common),
    /// Per-user rates and covered-user count for a random user field.
    Coverage(Common),
    /// Steering angle that covers the most users.
    BestSteering(Common),
    /// Print the environment presets.
    Presets,
}

#[derive(Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output CSV path.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Environment to include; repeat for several.
    #[arg(long = "env", value_name = "NAME")]
    envs: Vec<String>,
    /// User placement seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Disable beamforming.
    #[arg(long)]
    no_beam: bool,
    /// Number of array elements.
    #[arg(long)]
    m: Option<u32>,
    /// Steering angle in degrees.
    #[arg(long, value_name = "DEG", allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Also write a gnuplot script for the CSV.
    #[arg(long, value_name = "PATH")]
    plot: Option<PathBuf>,
}

fn main() -> ExitCode {
    match try_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let line = e.to_string().replace(['\n', '\r'], " ");
            eprintln!("error: {line}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn try_main() -> Result<(), CliError> {
    let (cmd, common) = match Cli::parse() {
        Cli::PlosSweep(c) => (Subcommand::PlosSweep, c),
        Cli::PowerSweep(c) => (Subcommand::PowerSweep, c),
        Cli::Coverage(c) => (Subcommand::Coverage, c),
        Cli::BestSteering(c) => (Subcommand::BestSteering, c),
        Cli::Presets => {
            for line in tuav_sim::commands::preset_lines() {
                println!("{line}");
            }
            return Ok(());
        }
    };
    let text = match &common.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        None => String::new(),
    };
    let overrides = Overrides {
        out: common.out,
        envs: common.envs,
        seed: common.seed,
        no_beam: common.no_beam,
        m: common.m,
        phi_deg: common.phi,
    };
    let cfg = parse_with_overrides(&text, &overrides)?;
    let outcome = run(cmd, &cfg, common.plot.as_deref())?;
    for line in outcome.stdout {
        println!("{line}");
    }
    Ok(())
}
