use std::path::Path;
use std::process::{Command, Output};

const EXE: &str = env!("CARGO_BIN_EXE_tuav-sim");

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(EXE)
        .args(args)
        .current_dir(dir)
        .env_remove(tuav_sim::OUT_DIR_VAR)
        .output()
        .unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn plos_sweep_default_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["plos-sweep"]);
    assert!(out.status.success());
    let csv = read(&dir.path().join("plos-sweep.csv"));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "theta_deg,env,plos");
    assert_eq!(lines.len(), 77);
    assert!(!csv.contains('\r'));
    // environment-major, ascending angle
    assert!(lines[1].starts_with("0,urban,"));
    assert!(lines[20].starts_with("0,suburban,"));
    assert!(lines[76].starts_with("90,highrise-urban,"));
}

#[test]
fn presets_prints_four_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["presets"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.contains("suburban a=4.88 b=0.43 eta_los_db=1 eta_nlos_db=21"));
}

#[test]
fn power_sweep_header_and_no_beam() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), &["power-sweep", "--out", "a.csv", "--env", "urban"]).status.success());
    let csv = read(&dir.path().join("a.csv"));
    assert!(csv.starts_with(
        "distance_m,env,theta_deg,prx_nobeam_dbm,prx_beam_dbm,snr_beam_db,rate_beam_bps\n"
    ));
    assert_eq!(csv.lines().count(), 22);
    assert!(run_in(dir.path(), &["power-sweep", "--out", "b.csv", "--no-beam"]).status.success());
    let csv = read(&dir.path().join("b.csv"));
    assert!(csv.starts_with("distance_m,env,theta_deg,prx_nobeam_dbm,snr_nobeam_db,rate_nobeam_bps\n"));
}

#[test]
fn out_dir_variable() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("results");
    let out = Command::new(EXE)
        .args(["coverage", "--env", "urban"])
        .current_dir(dir.path())
        .env(tuav_sim::OUT_DIR_VAR, &target)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(target.join("coverage.csv").exists());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("env=urban covered="), "{stdout}");
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.toml"), "[link]\nbandwith = 5e6\n").unwrap();
    let out = run_in(dir.path(), &["plos-sweep", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: config: "), "{err}");
    assert!(err.contains("b_hz"), "{err}");
    assert!(!dir.path().join("plos-sweep.csv").exists());

    let out = run_in(dir.path(), &["coverage", "--env", "rural"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run_in(dir.path(), &["plos-sweep", "--config", "missing.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // the output path is a directory, so the write fails
    std::fs::create_dir(dir.path().join("taken")).unwrap();
    let out = run_in(dir.path(), &["plos-sweep", "--out", "taken"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("c.toml"),
        "output = \"from-file.csv\"\n[sweep]\nenvs = [\"urban\"]\n",
    )
    .unwrap();
    assert!(run_in(dir.path(), &["plos-sweep", "--config", "c.toml"]).status.success());
    assert_eq!(read(&dir.path().join("from-file.csv")).lines().count(), 20);
    let out = run_in(
        dir.path(),
        &["plos-sweep", "--config", "c.toml", "--out", "flag.csv", "--env", "suburban", "--env", "dense-urban"],
    );
    assert!(out.status.success());
    let csv = read(&dir.path().join("flag.csv"));
    assert_eq!(csv.lines().count(), 39);
    assert!(!csv.contains(",urban,"));
}

#[test]
fn best_steering_with_plot() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["best-steering", "--env", "urban", "--m", "16", "--seed", "4", "--plot", "steer.gp", "--out", "steer.csv"],
    );
    assert!(out.status.success());
    let csv = read(&dir.path().join("steer.csv"));
    assert!(csv.starts_with("env,phi_deg,covered_count,total,selected\n"));
    assert_eq!(csv.lines().count(), 182);
    assert_eq!(csv.lines().filter(|l| l.ends_with(",1")).count(), 1);
    let script = read(&dir.path().join("steer.gp"));
    assert!(script.contains("\"steer.csv\""));
}

#[test]
fn negative_steering_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["coverage", "--phi", "-30", "--env", "urban", "--out", "c.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run_in(dir.path(), &["coverage", "--phi", "-120"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn library_run_matches_binary() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run_in(dir.path(), &["plos-sweep", "--out", "bin.csv"]).status.success());
    let mut cfg = tuav_sim::parse_config("").unwrap();
    cfg.output_path = Some(dir.path().join("lib.csv"));
    tuav_sim::run(tuav_sim::Subcommand::PlosSweep, &cfg, None).unwrap();
    assert_eq!(read(&dir.path().join("bin.csv")), read(&dir.path().join("lib.csv")));
}
