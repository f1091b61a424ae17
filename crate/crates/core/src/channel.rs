//! Air-to-ground channel: LoS probability, per-branch gains and the
//! LoS-probability-weighted mean gain.
//!
//! Branch gains follow `g = K · d^(−α) · 10^(−η/10)` where `η` is the
//! environment's excess loss for the branch and `K` depends on the backend:
//!
//! * [`PathLossModel::Exponent`]: `K = 1`, i.e. unit gain at 1 m.
//! * [`PathLossModel::Fspl`]: `K = (c / 4πf)²`, which with `α = 2` is the
//!   free-space Friis loss at carrier `f`.

use std::f64::consts::PI;

use crate::environments::Environment;
use crate::error::{invalid, Error, Result};
use crate::geometry::{elevation_angle_deg, slant_distance, GroundPoint, UavPose};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathLossModel {
    /// Pure power law with unit reference gain at 1 m.
    Exponent,
    /// Power law scaled by the free-space constant at the carrier frequency.
    #[default]
    Fspl,
}

/// Domain in which the LoS and NLoS branches are averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Averaging {
    /// `P_LoS·g_LoS + P_NLoS·g_NLoS` on linear gains.
    #[default]
    Linear,
    /// Probability-weighted mean of the branch gains in dB.
    Db,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossParams {
    /// Path-loss exponent, `>= 1`.
    pub alpha: f64,
    pub model: PathLossModel,
    pub averaging: Averaging,
}

impl Default for PathLossParams {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            model: PathLossModel::Fspl,
            averaging: Averaging::Linear,
        }
    }
}

impl PathLossParams {
    pub fn validate(self) -> Result<Self> {
        if !(self.alpha >= 1.0 && self.alpha.is_finite()) {
            return Err(invalid("alpha", format!("alpha must be >= 1 (got {})", self.alpha)));
        }
        Ok(self)
    }
}

/// Probability that the link at elevation `theta_deg` is line-of-sight,
/// `1 / (1 + a·exp(−b(θ − a)))`.
pub fn p_los(theta_deg: f64, env: &Environment) -> Result<f64> {
    if !(0.0..=90.0).contains(&theta_deg) {
        return Err(Error::ElevationOutOfRange(theta_deg));
    }
    Ok(1.0 / (1.0 + env.a * (-env.b * (theta_deg - env.a)).exp()))
}

/// `1 − p_los`.
pub fn p_nlos(theta_deg: f64, env: &Environment) -> Result<f64> {
    p_los(theta_deg, env).map(|p| 1.0 - p)
}

fn distance_gain(d: f64, p: &PathLossParams, carrier_hz: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::NonpositiveDistance(d));
    }
    let spreading = d.powf(-p.alpha);
    Ok(match p.model {
        PathLossModel::Exponent => spreading,
        PathLossModel::Fspl => {
            if !(carrier_hz > 0.0) {
                return Err(invalid("f_hz", format!("f_hz must be > 0 (got {carrier_hz})")));
            }
            let k = SPEED_OF_LIGHT / (4.0 * PI * carrier_hz);
            k * k * spreading
        }
    })
}

/// Linear LoS gain at distance `d`. `carrier_hz` is only used by the FSPL backend.
pub fn gain_los(d: f64, p: &PathLossParams, env: &Environment, carrier_hz: f64) -> Result<f64> {
    Ok(distance_gain(d, p, carrier_hz)? * env.los_factor())
}

/// Linear NLoS gain at distance `d`.
pub fn gain_nlos(d: f64, p: &PathLossParams, env: &Environment, carrier_hz: f64) -> Result<f64> {
    Ok(distance_gain(d, p, carrier_hz)? * env.nlos_factor())
}

/// Channel quantities for one UAV-user pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkChannel {
    pub distance_m: f64,
    pub theta_deg: f64,
    pub plos: f64,
    pub gain_los: f64,
    pub gain_nlos: f64,
    /// Averaged linear gain.
    pub mean_gain: f64,
}

impl LinkChannel {
    /// Mean path loss in dB, `−10·log10(mean_gain)`.
    pub fn path_loss_db(&self) -> f64 {
        -10.0 * self.mean_gain.log10()
    }
}

/// Evaluates the channel between `uav` and `user`.
pub fn link_channel(
    uav: &UavPose,
    user: &GroundPoint,
    p: &PathLossParams,
    env: &Environment,
    carrier_hz: f64,
) -> Result<LinkChannel> {
    let theta_deg = elevation_angle_deg(uav, user)?;
    let distance_m = slant_distance(uav, user);
    let plos = p_los(theta_deg, env)?;
    let g_los = gain_los(distance_m, p, env, carrier_hz)?;
    let g_nlos = gain_nlos(distance_m, p, env, carrier_hz)?;
    let mean_gain = average(plos, g_los, g_nlos, p.averaging);
    Ok(LinkChannel {
        distance_m,
        theta_deg,
        plos,
        gain_los: g_los,
        gain_nlos: g_nlos,
        mean_gain,
    })
}

fn average(plos: f64, g_los: f64, g_nlos: f64, averaging: Averaging) -> f64 {
    let pn = 1.0 - plos;
    match averaging {
        Averaging::Linear => plos * g_los + pn * g_nlos,
        Averaging::Db => {
            let db = plos * 10.0 * g_los.log10() + pn * 10.0 * g_nlos.log10();
            10f64.powf(db / 10.0)
        }
    }
}

/// Probability-averaged linear channel gain.
pub fn mean_gain(
    uav: &UavPose,
    user: &GroundPoint,
    p: &PathLossParams,
    env: &Environment,
    carrier_hz: f64,
) -> Result<f64> {
    link_channel(uav, user, p, env, carrier_hz).map(|c| c.mean_gain)
}

/// `−10·log10(mean_gain)`.
pub fn mean_path_loss_db(
    uav: &UavPose,
    user: &GroundPoint,
    p: &PathLossParams,
    env: &Environment,
    carrier_hz: f64,
) -> Result<f64> {
    link_channel(uav, user, p, env, carrier_hz).map(|c| c.path_loss_db())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environments::{presets, DENSE_URBAN, HIGHRISE_URBAN, SUBURBAN, URBAN};
    use approx::assert_relative_eq;

    const F: f64 = 2.4e9;

    fn exponent() -> PathLossParams {
        PathLossParams { alpha: 2.0, model: PathLossModel::Exponent, averaging: Averaging::Linear }
    }

    fn lossless() -> Environment {
        Environment::custom("lossless", 1.0, 1.0, 0.0, 0.0).unwrap()
    }

    // Frozen from an mpmath (40 digit) evaluation of the sigmoid.
    #[test]
    fn p_los_oracle_values() {
        assert_relative_eq!(p_los(30.0, &URBAN).unwrap(), 0.730_979_096_145_496_4, epsilon = 1e-12);
        assert_relative_eq!(p_los(15.0, &SUBURBAN).unwrap(), 0.940_835_954_758_022, epsilon = 1e-12);
        assert_relative_eq!(p_los(45.0, &HIGHRISE_URBAN).unwrap(), 0.421_802_577_947_620_2, epsilon = 1e-12);
        assert_relative_eq!(p_los(45.0, &URBAN).unwrap(), 0.967_691_899_947_242_3, epsilon = 1e-12);
        assert_relative_eq!(p_los(90.0, &URBAN).unwrap(), 0.999_975_074_537_903, epsilon = 1e-12);
    }

    #[test]
    fn p_los_rounded_values() {
        assert!((p_los(30.0, &URBAN).unwrap() - 0.7311).abs() < 5e-4);
        assert!((p_nlos(30.0, &URBAN).unwrap() - 0.2689).abs() < 5e-4);
        assert!((p_nlos(15.0, &SUBURBAN).unwrap() - 0.0592).abs() < 5e-4);
    }

    #[test]
    fn angle_range_rejected() {
        assert_eq!(p_los(-0.1, &URBAN), Err(Error::ElevationOutOfRange(-0.1)));
        assert_eq!(p_los(90.5, &URBAN), Err(Error::ElevationOutOfRange(90.5)));
        assert!(p_nlos(f64::NAN, &URBAN).is_err());
        assert!(p_los(0.0, &URBAN).is_ok() && p_los(90.0, &URBAN).is_ok());
    }

    #[test]
    fn complement_is_exact() {
        for env in presets() {
            for t in 0..=90 {
                let t = t as f64;
                let sum = p_los(t, &env).unwrap() + p_nlos(t, &env).unwrap();
                assert_eq!(sum, 1.0);
            }
        }
    }

    #[test]
    fn p_los_strictly_increasing() {
        for env in presets() {
            let mut prev = p_los(0.0, &env).unwrap();
            for i in 1..=900 {
                let p = p_los(i as f64 * 0.1, &env).unwrap();
                // suburban is within a few ulps of 1.0 above ~80°
                if 1.0 - p > 1e-12 {
                    assert!(p > prev, "{} at {}", env.name, i);
                } else {
                    assert!(p >= prev);
                }
                prev = p;
            }
        }
    }

    #[test]
    fn environment_ordering() {
        for k in 1..=17 {
            let t = 5.0 * k as f64;
            let s = p_los(t, &SUBURBAN).unwrap();
            let u = p_los(t, &URBAN).unwrap();
            let d = p_los(t, &DENSE_URBAN).unwrap();
            let h = p_los(t, &HIGHRISE_URBAN).unwrap();
            assert!(s > u && u > d && d > h, "theta {t}");
        }
    }

    #[test]
    fn branch_gains() {
        let p = exponent();
        assert_relative_eq!(gain_los(100.0, &p, &lossless(), F).unwrap(), 1e-4, max_relative = 1e-15);
        assert_relative_eq!(gain_los(100.0, &p, &URBAN, F).unwrap(), 7.943_282_347_242_815e-5, max_relative = 1e-14);
        assert_relative_eq!(gain_nlos(100.0, &p, &URBAN, F).unwrap(), 1e-6, max_relative = 1e-14);
        assert_relative_eq!(gain_nlos(100.0, &p, &HIGHRISE_URBAN, F).unwrap(), 3.981_071_705_534_973e-8, max_relative = 1e-14);
        for env in presets() {
            assert!(gain_nlos(250.0, &p, &env, F).unwrap() <= gain_los(250.0, &p, &env, F).unwrap());
        }
    }

    #[test]
    fn fspl_backend() {
        let p = PathLossParams::default();
        let g = gain_los(1000.0, &p, &lossless(), F).unwrap();
        // 20 log10(4π d f / c) at d = 1 km, f = 2.4 GHz (mpmath)
        assert_relative_eq!(-10.0 * g.log10(), 100.052_008_056_115_49, epsilon = 1e-10);
        assert!((-10.0 * g.log10() - 100.05).abs() < 0.01);
    }

    #[test]
    fn nonpositive_distance() {
        assert_eq!(gain_los(0.0, &exponent(), &URBAN, F), Err(Error::NonpositiveDistance(0.0)));
        assert_eq!(gain_nlos(-3.0, &exponent(), &URBAN, F), Err(Error::NonpositiveDistance(-3.0)));
    }

    #[test]
    fn alpha_validation() {
        let p = PathLossParams { alpha: 0.5, ..exponent() };
        assert!(p.validate().unwrap_err().to_string().contains("alpha must be >= 1"));
    }

    #[test]
    fn nadir_mean_gain_tracks_los_branch() {
        let uav = UavPose::new(0.0, 0.0, 100.0);
        let user = GroundPoint::on_ground(0.0, 0.0);
        let c = link_channel(&uav, &user, &exponent(), &URBAN, F).unwrap();
        assert!((c.mean_gain / c.gain_los - 1.0).abs() < 1e-3);
        // mpmath: 41.000106888436
        assert_relative_eq!(c.path_loss_db(), 41.000_106_888_436_25, epsilon = 1e-9);
    }

    #[test]
    fn equal_weights_give_arithmetic_mean() {
        // with a = 1 and theta = a the sigmoid gives 1 / (1 + 1)
        let env = Environment::custom("half", 1.0, 0.3, 0.0, 10.0).unwrap();
        let h = 1.0f64.to_radians().tan() * 100.0;
        let uav = UavPose::new(0.0, 0.0, h);
        let user = GroundPoint::on_ground(100.0, 0.0);
        let c = link_channel(&uav, &user, &exponent(), &env, F).unwrap();
        assert_relative_eq!(c.plos, 0.5, epsilon = 1e-12);
        assert_relative_eq!(c.mean_gain, 0.5 * (c.gain_los + c.gain_nlos), max_relative = 1e-12);
    }

    #[test]
    fn mean_gain_composition_at_45_degrees() {
        let uav = UavPose::new(0.0, 0.0, 100.0);
        let user = GroundPoint::on_ground(100.0, 0.0);
        let c = link_channel(&uav, &user, &exponent(), &URBAN, F).unwrap();
        assert_relative_eq!(c.theta_deg, 45.0, epsilon = 1e-12);
        assert_relative_eq!(c.distance_m, 141.421_356_237_309_5, max_relative = 1e-15);
        let plos = 0.967_691_899_947_242_3;
        let g_los = 7.943_282_347_242_815e-5 / 2.0;
        let g_nlos = 1e-6 / 2.0;
        assert_relative_eq!(c.mean_gain, plos * g_los + (1.0 - plos) * g_nlos, max_relative = 1e-12);
    }

    #[test]
    fn path_loss_log_identity() {
        let c = LinkChannel {
            distance_m: 1.0,
            theta_deg: 90.0,
            plos: 1.0,
            gain_los: 1e-6,
            gain_nlos: 1e-6,
            mean_gain: 1e-6,
        };
        assert_relative_eq!(c.path_loss_db(), 60.0, epsilon = 1e-12);
    }

    #[test]
    fn path_loss_grows_with_distance_at_fixed_angle() {
        let theta = 30f64.to_radians();
        for env in presets() {
            let mut prev = 0.0;
            for i in 1..=50 {
                let d = 20.0 * i as f64;
                let uav = UavPose::new(0.0, 0.0, d * theta.sin());
                let user = GroundPoint::on_ground(d * theta.cos(), 0.0);
                let loss = mean_path_loss_db(&uav, &user, &exponent(), &env, F).unwrap();
                assert!(loss > prev);
                if d > 1.0 {
                    assert!(loss > 0.0);
                }
                prev = loss;
            }
        }
    }

    #[test]
    fn mean_gain_is_convex_combination_and_db_is_below_linear() {
        let uav = UavPose::new(0.0, 0.0, 120.0);
        for env in presets() {
            for model in [PathLossModel::Exponent, PathLossModel::Fspl] {
                for i in 0..=60 {
                    let user = GroundPoint::on_ground(i as f64 * 50.0, 7.0);
                    let lin = PathLossParams { alpha: 2.0, model, averaging: Averaging::Linear };
                    let db = PathLossParams { averaging: Averaging::Db, ..lin };
                    let c = link_channel(&uav, &user, &lin, &env, F).unwrap();
                    assert!(c.mean_gain >= c.gain_nlos.min(c.gain_los));
                    assert!(c.mean_gain <= c.gain_nlos.max(c.gain_los));
                    let g_db = mean_gain(&uav, &user, &db, &env, F).unwrap();
                    assert!(g_db <= c.mean_gain * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn mean_gain_decreases_with_offset() {
        let uav = UavPose::new(0.0, 0.0, 100.0);
        for env in presets() {
            for averaging in [Averaging::Linear, Averaging::Db] {
                let p = PathLossParams { averaging, ..PathLossParams::default() };
                let mut prev = f64::INFINITY;
                for i in 0..=400 {
                    let g = mean_gain(&uav, &GroundPoint::on_ground(i as f64 * 5.0, 0.0), &p, &env, F).unwrap();
                    assert!(g < prev, "{} {:?} at {}", env.name, averaging, i);
                    prev = g;
                }
            }
        }
    }
}
