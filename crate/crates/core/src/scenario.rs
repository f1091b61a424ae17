//! Sweep engine and coverage metrics.
//!
//! Sweep points are independent and are evaluated in parallel, but every
//! table is returned in a fixed order: environment-major in the order the
//! environments were given, then ascending sweep variable.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::beamforming::ArrayConfig;
use crate::channel::{p_los, PathLossParams};
use crate::environments::Environment;
use crate::error::{Error, Result};
use crate::geometry::{CoverageEllipse, GroundPoint, UavPose};
use crate::linkbudget::{evaluate_link, LinkParams, LinkResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    PlosVsElevation,
    PowerVsDistance,
}

/// How the distance axis of a power sweep is realised.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DistanceMode {
    /// Ground distance from the UAV nadir at fixed altitude; elevation varies.
    #[default]
    Ground,
    /// Slant distance at a fixed elevation angle (degrees); altitude varies.
    Slant { theta_deg: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub envs: Vec<Environment>,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    /// UAV altitude for ground-distance power sweeps, meters.
    pub fixed_altitude_m: f64,
    /// Emit beamformed columns alongside the unbeamformed ones.
    pub beam_on_off: bool,
    pub distance_mode: DistanceMode,
}

fn sweep_err(field: &'static str, message: impl Into<String>) -> Error {
    Error::InvalidSweep {
        field,
        message: message.into(),
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.envs.is_empty() {
            return Err(sweep_err("envs", "at least one environment is required"));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) || !(self.start < self.stop) {
            return Err(sweep_err(
                "start",
                format!("start must be < stop (got {} >= {})", self.start, self.stop),
            ));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(sweep_err("step", format!("step must be > 0 (got {})", self.step)));
        }
        Ok(())
    }

    /// Sweep variable values `start, start + step, …` up to and including `stop`.
    pub fn grid(&self) -> Vec<f64> {
        grid(self.start, self.stop, self.step)
    }
}

/// Inclusive arithmetic grid. Points are computed as `start + i·step` so no
/// error accumulates; `stop` is included when it lies on the grid.
pub fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + i as f64 * step).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlosRow {
    pub theta_deg: f64,
    pub env: String,
    pub plos: f64,
}

pub fn run_plos_sweep(spec: &SweepSpec) -> Result<Vec<PlosRow>> {
    if spec.kind != SweepKind::PlosVsElevation {
        return Err(sweep_err("kind", "expected an elevation sweep"));
    }
    spec.validate()?;
    if spec.start < 0.0 || spec.stop > 90.0 {
        return Err(sweep_err("start", "elevation bounds must lie within [0, 90]"));
    }
    let thetas = spec.grid();
    let mut rows = Vec::with_capacity(thetas.len() * spec.envs.len());
    for env in &spec.envs {
        for &theta_deg in &thetas {
            rows.push(PlosRow {
                theta_deg,
                env: env.name.to_string(),
                plos: p_los(theta_deg, env)?,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerRow {
    pub distance_m: f64,
    pub env: String,
    pub theta_deg: f64,
    pub nobeam: LinkResult,
    /// Present when the sweep has `beam_on_off` set.
    pub beam: Option<LinkResult>,
}

/// Received power against distance, with the array (when enabled) steered at
/// each user so that it sees boresight gain.
pub fn run_power_sweep(
    spec: &SweepSpec,
    lp: &LinkParams,
    plp: &PathLossParams,
    array: &ArrayConfig,
) -> Result<Vec<PowerRow>> {
    if spec.kind != SweepKind::PowerVsDistance {
        return Err(sweep_err("kind", "expected a distance sweep"));
    }
    spec.validate()?;
    match spec.distance_mode {
        DistanceMode::Ground => {
            if !(spec.fixed_altitude_m > 0.0) {
                return Err(sweep_err("fixed_altitude_m", "fixed_altitude_m must be > 0"));
            }
            if spec.start < 0.0 {
                return Err(sweep_err("start", "ground distance must be >= 0"));
            }
        }
        DistanceMode::Slant { theta_deg } => {
            if !(theta_deg > 0.0 && theta_deg <= 90.0) {
                return Err(sweep_err("theta_deg", "slant-mode elevation must lie in (0, 90]"));
            }
            if !(spec.start > 0.0) {
                return Err(sweep_err("start", "slant distance must be > 0"));
            }
        }
    }
    let distances = spec.grid();
    let points: Vec<(&Environment, f64)> = spec
        .envs
        .iter()
        .flat_map(|env| distances.iter().map(move |&d| (env, d)))
        .collect();
    points
        .par_iter()
        .map(|&(env, d)| {
            let (uav, user) = match spec.distance_mode {
                DistanceMode::Ground => (
                    UavPose::new(0.0, 0.0, spec.fixed_altitude_m),
                    GroundPoint::on_ground(d, 0.0),
                ),
                DistanceMode::Slant { theta_deg } => {
                    let t = theta_deg.to_radians();
                    (
                        UavPose::new(0.0, 0.0, d * t.sin()),
                        GroundPoint::on_ground(d * t.cos(), 0.0),
                    )
                }
            };
            let nobeam = evaluate_link(&uav, &user, lp, plp, env, None)?;
            let beam = if spec.beam_on_off {
                let steered = array.steered(nobeam.theta_deg);
                Some(evaluate_link(&uav, &user, lp, plp, env, Some(&steered))?)
            } else {
                None
            };
            Ok(PowerRow {
                distance_m: d,
                env: env.name.to_string(),
                theta_deg: nobeam.theta_deg,
                nobeam,
                beam,
            })
        })
        .collect()
}

/// Ground users drawn uniformly over an ellipse centred at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct UserField {
    pub users: Vec<GroundPoint>,
    pub seed: u64,
    pub region: CoverageEllipse,
}

/// Uniform draw in `[0, 1)` from the top 53 bits of one 64-bit output.
fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Places `n` users uniformly inside `region` by rejection from the bounding
/// rectangle.
///
/// The generator is xoshiro256++ seeded through SplitMix64 from `seed`. Each
/// candidate consumes two outputs, `x = (2u − 1)·a` then `y = (2v − 1)·b`,
/// with `u, v = (next_u64 >> 11) · 2⁻⁵³`. Candidates outside the ellipse are
/// discarded.
pub fn place_users(n: usize, region: CoverageEllipse, seed: u64) -> UserField {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let center = UavPose::new(0.0, 0.0, 1.0);
    let mut users = Vec::with_capacity(n);
    while users.len() < n {
        let x = (2.0 * unit_f64(&mut rng) - 1.0) * region.a_i;
        let y = (2.0 * unit_f64(&mut rng) - 1.0) * region.b_i;
        let p = GroundPoint::on_ground(x, y);
        if region.contains(&p, &center) {
            users.push(p);
        }
    }
    UserField { users, seed, region }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub covered_count: usize,
    pub total: usize,
    pub min_rate_bps: f64,
    pub per_user: Vec<LinkResult>,
}

/// Evaluates every user's link and counts those meeting `min_rate_bps`.
pub fn coverage_report(
    field: &UserField,
    uav: &UavPose,
    lp: &LinkParams,
    plp: &PathLossParams,
    env: &Environment,
    beam: Option<&ArrayConfig>,
    min_rate_bps: f64,
) -> Result<CoverageReport> {
    let per_user = field
        .users
        .iter()
        .map(|u| evaluate_link(uav, u, lp, plp, env, beam))
        .collect::<Result<Vec<_>>>()?;
    let covered_count = per_user.iter().filter(|r| r.rate_bps >= min_rate_bps).count();
    Ok(CoverageReport {
        covered_count,
        total: per_user.len(),
        min_rate_bps,
        per_user,
    })
}

/// Coverage at every steering angle of `phi_grid`, in grid order.
pub fn steering_scan(
    field: &UserField,
    uav: &UavPose,
    lp: &LinkParams,
    plp: &PathLossParams,
    env: &Environment,
    array: &ArrayConfig,
    phi_grid: &[f64],
    min_rate_bps: f64,
) -> Result<Vec<(f64, CoverageReport)>> {
    phi_grid
        .par_iter()
        .map(|&phi| {
            let cfg = array.steered(phi).validate()?;
            let report = coverage_report(field, uav, lp, plp, env, Some(&cfg), min_rate_bps)?;
            Ok((phi, report))
        })
        .collect()
}

/// Index of the preferred entry: most covered users, then smallest `|φ|`,
/// then smallest `φ`.
pub fn select_steering(scan: &[(f64, usize)]) -> Option<usize> {
    let better = |a: (f64, usize), b: (f64, usize)| {
        a.1 > b.1 || (a.1 == b.1 && (a.0.abs() < b.0.abs() || (a.0.abs() == b.0.abs() && a.0 < b.0)))
    };
    let mut best: Option<usize> = None;
    for (i, &entry) in scan.iter().enumerate() {
        match best {
            Some(j) if !better(entry, scan[j]) => {}
            _ => best = Some(i),
        }
    }
    best
}

/// Exhaustive search for the steering angle that covers the most users.
pub fn best_steering(
    field: &UserField,
    uav: &UavPose,
    lp: &LinkParams,
    plp: &PathLossParams,
    env: &Environment,
    array: &ArrayConfig,
    phi_grid: &[f64],
    min_rate_bps: f64,
) -> Result<(f64, CoverageReport)> {
    if phi_grid.is_empty() {
        return Err(sweep_err("phi_grid", "steering grid must not be empty"));
    }
    let mut scan = steering_scan(field, uav, lp, plp, env, array, phi_grid, min_rate_bps)?;
    let counts: Vec<(f64, usize)> = scan.iter().map(|(p, r)| (*p, r.covered_count)).collect();
    let best = select_steering(&counts).expect("non-empty grid");
    Ok(scan.swap_remove(best))
}
