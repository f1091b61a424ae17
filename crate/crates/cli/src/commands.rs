//! Subcommand execution.

use std::path::{Path, PathBuf};

use tuav_core::prelude::*;
use tuav_core::scenario::select_steering;

use crate::config::RunConfig;
use crate::csvout::{format_db, format_float, Table};
use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "TUAV_SIM_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    PlosSweep,
    PowerSweep,
    Coverage,
    BestSteering,
    Presets,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::PlosSweep => "plos-sweep",
            Subcommand::PowerSweep => "power-sweep",
            Subcommand::Coverage => "coverage",
            Subcommand::BestSteering => "best-steering",
            Subcommand::Presets => "presets",
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Lines for standard output.
    pub stdout: Vec<String>,
    /// CSV written, if any.
    pub csv_path: Option<PathBuf>,
    pub plot_path: Option<PathBuf>,
}

/// Output path: explicit path, else `$TUAV_SIM_OUT_DIR/<subcommand>.csv`,
/// else `./<subcommand>.csv`.
pub fn output_path(cmd: Subcommand, cfg: &RunConfig) -> PathBuf {
    if let Some(p) = &cfg.output_path {
        return p.clone();
    }
    let file = format!("{}.csv", cmd.name());
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if !dir.is_empty() => Path::new(&dir).join(file),
        _ => PathBuf::from(file),
    }
}

/// Lines printed by `presets`.
pub fn preset_lines() -> Vec<String> {
    presets().iter().map(ToString::to_string).collect()
}

/// Computes the table for a data-producing subcommand plus summary lines.
pub fn compute(cmd: Subcommand, cfg: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    match cmd {
        Subcommand::PlosSweep => plos_table(cfg).map(|t| (t, Vec::new())),
        Subcommand::PowerSweep => power_table(cfg).map(|t| (t, Vec::new())),
        Subcommand::Coverage => coverage_table(cfg),
        Subcommand::BestSteering => steering_table(cfg),
        Subcommand::Presets => Ok((Table::default(), preset_lines())),
    }
}

/// Runs a subcommand. All computation finishes before anything is written.
pub fn run(cmd: Subcommand, cfg: &RunConfig, plot: Option<&Path>) -> Result<Outcome, CliError> {
    if cmd == Subcommand::Presets {
        return Ok(Outcome {
            stdout: preset_lines(),
            csv_path: None,
            plot_path: None,
        });
    }
    let (table, stdout) = compute(cmd, cfg)?;
    let bytes = table.to_bytes();
    let path = output_path(cmd, cfg);
    let script = plot.map(|_| plot_script(cmd, &path, cfg));
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(&path, bytes)?;
    if let (Some(p), Some(s)) = (plot, script) {
        std::fs::write(p, s)?;
    }
    Ok(Outcome {
        stdout,
        csv_path: Some(path),
        plot_path: plot.map(Path::to_path_buf),
    })
}

fn sweep_spec(cfg: &RunConfig, kind: SweepKind) -> SweepSpec {
    let (start, stop, step) = match kind {
        SweepKind::PlosVsElevation => (0.0, 90.0, 5.0),
        // centred on the 500 m reference distance
        SweepKind::PowerVsDistance => match cfg.sweep.distance_mode {
            DistanceMode::Ground => (0.0, 1000.0, 50.0),
            DistanceMode::Slant { .. } => (50.0, 950.0, 50.0),
        },
    };
    SweepSpec {
        kind,
        envs: cfg.envs.clone(),
        start: cfg.sweep.start.unwrap_or(start),
        stop: cfg.sweep.stop.unwrap_or(stop),
        step: cfg.sweep.step.unwrap_or(step),
        fixed_altitude_m: cfg.sweep.fixed_altitude_m,
        beam_on_off: cfg.beam,
        distance_mode: cfg.sweep.distance_mode,
    }
}

pub fn plos_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let rows = run_plos_sweep(&sweep_spec(cfg, SweepKind::PlosVsElevation))?;
    let mut t = Table::new(vec!["theta_deg", "env", "plos"]);
    for r in rows {
        t.push(vec![format_float(r.theta_deg), r.env, format_float(r.plos)]);
    }
    Ok(t)
}

pub fn power_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let spec = sweep_spec(cfg, SweepKind::PowerVsDistance);
    let rows = run_power_sweep(&spec, &cfg.link, &cfg.pathloss, &cfg.array)?;
    let mut t = if cfg.beam {
        Table::new(vec![
            "distance_m",
            "env",
            "theta_deg",
            "prx_nobeam_dbm",
            "prx_beam_dbm",
            "snr_beam_db",
            "rate_beam_bps",
        ])
    } else {
        Table::new(vec![
            "distance_m",
            "env",
            "theta_deg",
            "prx_nobeam_dbm",
            "snr_nobeam_db",
            "rate_nobeam_bps",
        ])
    };
    for r in rows {
        let mut row = vec![
            format_float(r.distance_m),
            r.env,
            format_float(r.theta_deg),
            format_db(r.nobeam.prx_dbm),
        ];
        let tail = r.beam.unwrap_or(r.nobeam);
        if r.beam.is_some() {
            row.push(format_db(tail.prx_dbm));
        }
        row.push(format_db(tail.snr_db));
        row.push(format_float(tail.rate_bps));
        t.push(row);
    }
    Ok(t)
}

fn field_and_uav(cfg: &RunConfig) -> (UserField, UavPose) {
    let c = &cfg.coverage;
    (
        place_users(c.users, c.region, cfg.seed),
        UavPose::new(0.0, 0.0, c.altitude_m),
    )
}

pub fn coverage_table(cfg: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let (field, uav) = field_and_uav(cfg);
    let beam = cfg.beam.then_some(&cfg.array);
    let mut t = Table::new(vec![
        "env", "user", "x_m", "y_m", "distance_m", "theta_deg", "plos", "prx_dbm", "snr_db",
        "rate_bps", "covered",
    ]);
    let mut summary = Vec::new();
    for env in &cfg.envs {
        let report = coverage_report(&field, &uav, &cfg.link, &cfg.pathloss, env, beam, cfg.coverage.min_rate_bps)?;
        for (i, (u, r)) in field.users.iter().zip(&report.per_user).enumerate() {
            t.push(vec![
                env.name.to_string(),
                i.to_string(),
                format_float(u.x),
                format_float(u.y),
                format_float(r.distance_m),
                format_float(r.theta_deg),
                format_float(r.plos),
                format_db(r.prx_dbm),
                format_db(r.snr_db),
                format_float(r.rate_bps),
                u8::from(r.rate_bps >= report.min_rate_bps).to_string(),
            ]);
        }
        summary.push(format!(
            "env={} covered={} total={} min_rate_bps={}",
            env.name,
            report.covered_count,
            report.total,
            format_float(report.min_rate_bps)
        ));
    }
    Ok((t, summary))
}

pub fn steering_table(cfg: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let (field, uav) = field_and_uav(cfg);
    let grid = cfg.coverage.phi_grid();
    let mut t = Table::new(vec!["env", "phi_deg", "covered_count", "total", "selected"]);
    let mut summary = Vec::new();
    for env in &cfg.envs {
        let scan = steering_scan(
            &field,
            &uav,
            &cfg.link,
            &cfg.pathloss,
            env,
            &cfg.array,
            &grid,
            cfg.coverage.min_rate_bps,
        )?;
        let counts: Vec<(f64, usize)> = scan.iter().map(|(p, r)| (*p, r.covered_count)).collect();
        let best = select_steering(&counts)
            .ok_or_else(|| CliError::Config("coverage.phi_start: steering grid is empty".into()))?;
        for (i, (phi, report)) in scan.iter().enumerate() {
            t.push(vec![
                env.name.to_string(),
                format_float(*phi),
                report.covered_count.to_string(),
                report.total.to_string(),
                u8::from(i == best).to_string(),
            ]);
        }
        let (phi, report) = &scan[best];
        summary.push(format!(
            "env={} best_phi_deg={} covered={} total={}",
            env.name,
            format_float(*phi),
            report.covered_count,
            report.total
        ));
    }
    Ok((t, summary))
}

/// A gnuplot script that draws the CSV produced by `cmd`.
pub fn plot_script(cmd: Subcommand, csv: &Path, cfg: &RunConfig) -> String {
    let data = csv.display().to_string().replace('"', "\\\"");
    let mut s = String::from("set datafile separator \",\"\nset key outside\nset grid\n");
    let data_ref = data.as_str();
    let series = |cols: &[(usize, &str)]| {
        let data = data_ref;
        cfg.envs
            .iter()
            .flat_map(|e| {
                cols.iter().map(move |&(col, label)| {
                    format!(
                        "\"{data}\" every ::1 using 1:(strcol(2) eq \"{n}\" ? ${col} : 1/0) with linespoints title \"{n}{label}\"",
                        n = e.name
                    )
                })
            })
            .collect::<Vec<_>>()
            .join(", \\\n     ")
    };
    match cmd {
        Subcommand::PlosSweep => {
            s.push_str("set xlabel \"Elevation angle (deg)\"\nset ylabel \"P_{LoS}\"\n");
            s.push_str(&format!("plot {}\n", series(&[(3, "")])));
        }
        Subcommand::PowerSweep => {
            s.push_str("set xlabel \"Distance (m)\"\nset ylabel \"Received power (dBm)\"\n");
            let cols: &[(usize, &str)] = if cfg.beam {
                &[(4, " no beam"), (5, " beam")]
            } else {
                &[(4, " no beam")]
            };
            s.push_str(&format!("plot {}\n", series(cols)));
        }
        Subcommand::Coverage => {
            s.push_str("set xlabel \"x (m)\"\nset ylabel \"y (m)\"\nset size ratio -1\n");
            s.push_str(&format!(
                "plot \"{data}\" every ::1 using 3:(strcol(11) eq \"1\" ? $4 : 1/0) with points pt 7 title \"covered\", \\\n     \"{data}\" every ::1 using 3:(strcol(11) eq \"0\" ? $4 : 1/0) with points pt 6 title \"not covered\"\n"
            ));
        }
        Subcommand::BestSteering => {
            s.push_str("set xlabel \"Steering angle (deg)\"\nset ylabel \"Covered users\"\n");
            let plots = cfg
                .envs
                .iter()
                .map(|e| format!("\"{data}\" every ::1 using 2:(strcol(1) eq \"{n}\" ? $3 : 1/0) with lines title \"{n}\"", n = e.name))
                .collect::<Vec<_>>()
                .join(", \\\n     ");
            s.push_str(&format!("plot {plots}\n"));
        }
        Subcommand::Presets => {}
    }
    s
}
