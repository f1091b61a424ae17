//! TOML run configuration.
//!
//! Every section and key is optional; missing values fall back to the
//! defaults below. Unknown keys are rejected with the nearest valid key.
//!
//! ```toml
//! seed = 42
//! output = "out.csv"
//!
//! [environment]          # optional custom environment, all five keys required
//! name = "campus"
//! a = 7.0
//! b = 0.2
//! eta_los_db = 0.5
//! eta_nlos_db = 18.0
//!
//! [link]
//! pt_dbm = 20.0
//! gt_dbi = 10.0
//! gr_dbi = 10.0
//! f_hz = 2.4e9
//! b_hz = 10e6
//! nf_db = 5.0
//! antenna_gains = true   # false zeroes gt_dbi and gr_dbi
//!
//! [pathloss]
//! alpha = 2.0
//! model = "fspl"         # or "exponent"
//! averaging = "linear"   # or "db"
//!
//! [array]
//! m = 8
//! phi_deg = 0.0
//! gain_model = "directivity"   # or "coherent"
//! beam = true
//!
//! [sweep]
//! envs = ["urban", "suburban", "dense-urban", "highrise-urban"]
//! start = 0.0
//! stop = 90.0
//! step = 5.0
//! fixed_altitude_m = 100.0
//! mode = "ground"        # or "slant"
//! slant_theta_deg = 30.0
//!
//! [coverage]
//! users = 100
//! region_a_m = 1000.0
//! region_b_m = 600.0
//! altitude_m = 100.0
//! min_rate_bps = 1e6
//! phi_start = -90.0
//! phi_stop = 90.0
//! phi_step = 1.0
//! ```

use std::path::PathBuf;

use serde::Deserialize;
use tuav_core::prelude::*;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    seed: Option<u64>,
    output: Option<PathBuf>,
    environment: Option<RawEnvironment>,
    link: Option<RawLink>,
    pathloss: Option<RawPathLoss>,
    array: Option<RawArray>,
    sweep: Option<RawSweep>,
    coverage: Option<RawCoverage>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnvironment {
    name: Option<String>,
    a: Option<f64>,
    b: Option<f64>,
    eta_los_db: Option<f64>,
    eta_nlos_db: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    pt_dbm: Option<f64>,
    gt_dbi: Option<f64>,
    gr_dbi: Option<f64>,
    f_hz: Option<f64>,
    b_hz: Option<f64>,
    nf_db: Option<f64>,
    antenna_gains: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPathLoss {
    alpha: Option<f64>,
    model: Option<ModelName>,
    averaging: Option<AveragingName>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModelName {
    Exponent,
    Fspl,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AveragingName {
    Linear,
    Db,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArray {
    m: Option<u32>,
    phi_deg: Option<f64>,
    gain_model: Option<GainModelName>,
    beam: Option<bool>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum GainModelName {
    Directivity,
    Coherent,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    envs: Option<Vec<String>>,
    start: Option<f64>,
    stop: Option<f64>,
    step: Option<f64>,
    fixed_altitude_m: Option<f64>,
    mode: Option<ModeName>,
    slant_theta_deg: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeName {
    Ground,
    Slant,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoverage {
    users: Option<usize>,
    region_a_m: Option<f64>,
    region_b_m: Option<f64>,
    altitude_m: Option<f64>,
    min_rate_bps: Option<f64>,
    phi_start: Option<f64>,
    phi_stop: Option<f64>,
    phi_step: Option<f64>,
}

/// Sweep bounds as configured; unset bounds take per-subcommand defaults.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepSettings {
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub step: Option<f64>,
    pub fixed_altitude_m: f64,
    pub distance_mode: DistanceMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageSettings {
    pub users: usize,
    pub region: CoverageEllipse,
    pub altitude_m: f64,
    pub min_rate_bps: f64,
    pub phi_start: f64,
    pub phi_stop: f64,
    pub phi_step: f64,
}

impl Default for CoverageSettings {
    fn default() -> Self {
        Self {
            users: 100,
            region: CoverageEllipse { a_i: 1000.0, b_i: 600.0 },
            altitude_m: 100.0,
            min_rate_bps: 1e6,
            phi_start: -90.0,
            phi_stop: 90.0,
            phi_step: 1.0,
        }
    }
}

impl CoverageSettings {
    pub fn phi_grid(&self) -> Vec<f64> {
        grid(self.phi_start, self.phi_stop, self.phi_step)
    }
}

/// A fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Environments the run covers, in output order.
    pub envs: Vec<Environment>,
    pub custom_env: Option<Environment>,
    pub link: LinkParams,
    pub pathloss: PathLossParams,
    pub array: ArrayConfig,
    /// Whether beamformed results are produced.
    pub beam: bool,
    pub sweep: SweepSettings,
    pub coverage: CoverageSettings,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub envs: Vec<String>,
    pub seed: Option<u64>,
    pub no_beam: bool,
    pub m: Option<u32>,
    pub phi_deg: Option<f64>,
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    parse_with_overrides(text, &Overrides::default())
}

/// Parses a configuration document and applies command-line overrides
/// (flags > file > defaults) before validation.
pub fn parse_with_overrides(text: &str, ov: &Overrides) -> Result<RunConfig, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| describe_toml_error(text, &e))?;
    build(raw, ov)
}

fn cfg_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

fn build(raw: RawConfig, ov: &Overrides) -> Result<RunConfig, CliError> {
    let custom_env = raw.environment.map(build_environment).transpose()?;

    let rl = raw.link.unwrap_or_default();
    let defaults = LinkParams::default();
    let mut link = LinkParams {
        pt_dbm: rl.pt_dbm.unwrap_or(defaults.pt_dbm),
        gt_dbi: rl.gt_dbi.unwrap_or(defaults.gt_dbi),
        gr_dbi: rl.gr_dbi.unwrap_or(defaults.gr_dbi),
        f_hz: rl.f_hz.unwrap_or(defaults.f_hz),
        b_hz: rl.b_hz.unwrap_or(defaults.b_hz),
        nf_db: rl.nf_db.unwrap_or(defaults.nf_db),
    };
    if rl.antenna_gains == Some(false) {
        link.gt_dbi = 0.0;
        link.gr_dbi = 0.0;
    }
    let link = link.validate().map_err(|e| prefixed("link", e))?;

    let rp = raw.pathloss.unwrap_or_default();
    let pathloss = PathLossParams {
        alpha: rp.alpha.unwrap_or(2.0),
        model: match rp.model.unwrap_or(ModelName::Fspl) {
            ModelName::Exponent => PathLossModel::Exponent,
            ModelName::Fspl => PathLossModel::Fspl,
        },
        averaging: match rp.averaging.unwrap_or(AveragingName::Linear) {
            AveragingName::Linear => Averaging::Linear,
            AveragingName::Db => Averaging::Db,
        },
    }
    .validate()
    .map_err(|e| prefixed("pathloss", e))?;

    let ra = raw.array.unwrap_or_default();
    let array = ArrayConfig {
        m: ov.m.or(ra.m).unwrap_or(8),
        phi_deg: ov.phi_deg.or(ra.phi_deg).unwrap_or(0.0),
        gain_model: match ra.gain_model.unwrap_or(GainModelName::Directivity) {
            GainModelName::Directivity => GainModel::Directivity,
            GainModelName::Coherent => GainModel::Coherent,
        },
    }
    .validate()
    .map_err(|e| prefixed("array", e))?;
    let beam = !ov.no_beam && ra.beam.unwrap_or(true);

    let rs = raw.sweep.unwrap_or_default();
    let env_names: Vec<String> = if !ov.envs.is_empty() {
        ov.envs.clone()
    } else if let Some(names) = rs.envs {
        names
    } else {
        PRESET_NAMES.iter().map(|s| s.to_string()).collect()
    };
    if env_names.is_empty() {
        return Err(cfg_err("sweep.envs", "at least one environment is required"));
    }
    let envs = env_names
        .iter()
        .map(|n| resolve_env(n, custom_env.as_ref()))
        .collect::<Result<Vec<_>, _>>()?;

    let fixed_altitude_m = rs.fixed_altitude_m.unwrap_or(100.0);
    if !(fixed_altitude_m > 0.0) {
        return Err(cfg_err("sweep.fixed_altitude_m", "fixed_altitude_m must be > 0"));
    }
    let distance_mode = match rs.mode.unwrap_or(ModeName::Ground) {
        ModeName::Ground => {
            if rs.slant_theta_deg.is_some() {
                return Err(cfg_err("sweep.slant_theta_deg", "only valid with mode = \"slant\""));
            }
            DistanceMode::Ground
        }
        ModeName::Slant => {
            let theta_deg = rs.slant_theta_deg.unwrap_or(30.0);
            if !(theta_deg > 0.0 && theta_deg <= 90.0) {
                return Err(cfg_err("sweep.slant_theta_deg", "slant_theta_deg must lie in (0, 90]"));
            }
            DistanceMode::Slant { theta_deg }
        }
    };
    if let Some(step) = rs.step {
        if !(step > 0.0) {
            return Err(cfg_err("sweep.step", "step must be > 0"));
        }
    }
    if let (Some(a), Some(b)) = (rs.start, rs.stop) {
        if !(a < b) {
            return Err(cfg_err("sweep.start", "start must be < stop"));
        }
    }
    let sweep = SweepSettings {
        start: rs.start,
        stop: rs.stop,
        step: rs.step,
        fixed_altitude_m,
        distance_mode,
    };

    let rc = raw.coverage.unwrap_or_default();
    let d = CoverageSettings::default();
    let coverage = CoverageSettings {
        users: rc.users.unwrap_or(d.users),
        region: CoverageEllipse::new(
            rc.region_a_m.unwrap_or(d.region.a_i),
            rc.region_b_m.unwrap_or(d.region.b_i),
        )
        .map_err(|e| prefixed("coverage", e))?,
        altitude_m: rc.altitude_m.unwrap_or(d.altitude_m),
        min_rate_bps: rc.min_rate_bps.unwrap_or(d.min_rate_bps),
        phi_start: rc.phi_start.unwrap_or(d.phi_start),
        phi_stop: rc.phi_stop.unwrap_or(d.phi_stop),
        phi_step: rc.phi_step.unwrap_or(d.phi_step),
    };
    if !(coverage.altitude_m > 0.0) {
        return Err(cfg_err("coverage.altitude_m", "altitude_m must be > 0"));
    }
    if !(coverage.min_rate_bps >= 0.0) {
        return Err(cfg_err("coverage.min_rate_bps", "min_rate_bps must be >= 0"));
    }
    if !(coverage.phi_step > 0.0) {
        return Err(cfg_err("coverage.phi_step", "phi_step must be > 0"));
    }
    if !(coverage.phi_start <= coverage.phi_stop)
        || coverage.phi_start < -90.0
        || coverage.phi_stop > 90.0
    {
        return Err(cfg_err(
            "coverage.phi_start",
            "steering grid must satisfy -90 <= phi_start <= phi_stop <= 90",
        ));
    }

    Ok(RunConfig {
        envs,
        custom_env,
        link,
        pathloss,
        array,
        beam,
        sweep,
        coverage,
        output_path: ov.out.clone().or(raw.output),
        seed: ov.seed.or(raw.seed).unwrap_or(DEFAULT_SEED),
    })
}

fn prefixed(section: &str, e: tuav_core::Error) -> CliError {
    match e {
        tuav_core::Error::InvalidParameter { field, message } => {
            CliError::Config(format!("{section}.{field}: {message}"))
        }
        other => CliError::Config(format!("{section}: {other}")),
    }
}

fn build_environment(re: RawEnvironment) -> Result<Environment, CliError> {
    let missing = |k: &str| cfg_err(&format!("environment.{k}"), "required for a custom environment");
    let name = re.name.ok_or_else(|| missing("name"))?;
    if PRESET_NAMES.contains(&name.as_str()) {
        return Err(cfg_err(
            "environment.name",
            format!("`{name}` is a preset and cannot be redefined"),
        ));
    }
    let env = Environment::custom(
        name,
        re.a.ok_or_else(|| missing("a"))?,
        re.b.ok_or_else(|| missing("b"))?,
        re.eta_los_db.ok_or_else(|| missing("eta_los_db"))?,
        re.eta_nlos_db.ok_or_else(|| missing("eta_nlos_db"))?,
    )?;
    Ok(env)
}

fn resolve_env(name: &str, custom: Option<&Environment>) -> Result<Environment, CliError> {
    if let Some(env) = custom.filter(|e| e.name == name) {
        return Ok(env.clone());
    }
    preset(name).map_err(|_| {
        let mut valid: Vec<&str> = PRESET_NAMES.to_vec();
        if let Some(c) = custom {
            valid.push(&c.name);
        }
        CliError::Config(format!(
            "unknown environment `{name}` (valid: {})",
            valid.join(", ")
        ))
    })
}

/// Valid keys per section, each with descriptive aliases used only to rank
/// suggestions for misspelled keys.
const KEYS: &[(&str, &[(&str, &[&str])])] = &[
    (
        "",
        &[
            ("seed", &["rng", "random_seed"]),
            ("output", &["out", "output_path", "path"]),
            ("environment", &["env"]),
            ("link", &[]),
            ("pathloss", &["path_loss"]),
            ("array", &["beam"]),
            ("sweep", &[]),
            ("coverage", &[]),
        ],
    ),
    (
        "environment",
        &[
            ("name", &[]),
            ("a", &[]),
            ("b", &[]),
            ("eta_los_db", &["eta_los", "los_loss"]),
            ("eta_nlos_db", &["eta_nlos", "nlos_loss", "mu_nlos"]),
        ],
    ),
    (
        "link",
        &[
            ("pt_dbm", &["tx_power", "power", "pt"]),
            ("gt_dbi", &["tx_gain", "gt"]),
            ("gr_dbi", &["rx_gain", "gr"]),
            ("f_hz", &["frequency", "carrier", "freq"]),
            ("b_hz", &["bandwidth", "bw"]),
            ("nf_db", &["noise_figure", "nf"]),
            ("antenna_gains", &["gains"]),
        ],
    ),
    (
        "pathloss",
        &[
            ("alpha", &["exponent", "path_loss_exponent"]),
            ("model", &[]),
            ("averaging", &["average", "avg"]),
        ],
    ),
    (
        "array",
        &[
            ("m", &["elements", "num_elements"]),
            ("phi_deg", &["phi", "steering", "steer"]),
            ("gain_model", &["model"]),
            ("beam", &["beamforming"]),
        ],
    ),
    (
        "sweep",
        &[
            ("envs", &["environments", "env"]),
            ("start", &["min", "from"]),
            ("stop", &["max", "to", "end"]),
            ("step", &["increment", "delta"]),
            ("fixed_altitude_m", &["altitude", "height", "h"]),
            ("mode", &[]),
            ("slant_theta_deg", &["theta", "elevation"]),
        ],
    ),
    (
        "coverage",
        &[
            ("users", &["n", "num_users", "count"]),
            ("region_a_m", &["a", "semi_major"]),
            ("region_b_m", &["b", "semi_minor"]),
            ("altitude_m", &["altitude", "height", "h"]),
            ("min_rate_bps", &["min_rate", "threshold", "rate"]),
            ("phi_start", &[]),
            ("phi_stop", &[]),
            ("phi_step", &[]),
        ],
    ),
];

/// Nearest valid key in `section` to the misspelled `key`.
pub fn suggest_key(section: &str, key: &str) -> Option<&'static str> {
    let (_, keys) = KEYS.iter().find(|(s, _)| *s == section)?;
    keys.iter()
        .map(|(k, aliases)| {
            let best = std::iter::once(*k)
                .chain(aliases.iter().copied())
                .map(|cand| strsim::damerau_levenshtein(key, cand))
                .min()
                .unwrap_or(usize::MAX);
            (best, *k)
        })
        .min_by_key(|(d, _)| *d)
        .filter(|(d, _)| *d <= key.len().max(3) / 2 + 1)
        .map(|(_, k)| k)
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Name of the table header governing byte `offset`, or "" for the root.
fn section_at(text: &str, offset: usize) -> String {
    let before = &text[..offset.min(text.len())];
    before
        .lines()
        .rev()
        .map(str::trim)
        .find(|l| l.starts_with('[') && !l.starts_with("[["))
        .and_then(|l| l.strip_prefix('['))
        .and_then(|l| l.split(']').next())
        .map(|s| s.trim().to_string())
        .unwrap_or_default()
}

fn describe_toml_error(text: &str, e: &toml::de::Error) -> CliError {
    let msg = e.message().lines().next().unwrap_or("").to_string();
    let start = e.span().map(|s| s.start).unwrap_or(0);
    let (line, col) = line_col(text, start);
    if let Some(rest) = msg.strip_prefix("unknown field `") {
        let key = rest.split('`').next().unwrap_or("");
        let section = section_at(text, start);
        let path = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        let hint = suggest_key(&section, key)
            .map(|k| format!(" (did you mean `{k}`?)"))
            .unwrap_or_default();
        return CliError::Config(format!("line {line}: unknown key `{path}`{hint}"));
    }
    CliError::Config(format!("line {line}, column {col}: {msg}"))
}
