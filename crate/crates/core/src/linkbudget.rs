//! Downlink budget: received power, SNR and Shannon rate.
//!
//! ```text
//! P_rx = P_tx + G_t + G_r + G_beam(θ) − L(d, θ)
//! N    = −174 + 10·log10(B) + NF
//! R    = B · log2(1 + 10^((P_rx − N)/10))
//! ```

use crate::beamforming::{beamforming_gain_db, ArrayConfig, Db};
use crate::channel::{link_channel, PathLossParams};
use crate::environments::Environment;
use crate::error::{invalid, Result};
use crate::geometry::{GroundPoint, UavPose};

/// Thermal noise density at 290 K, dBm/Hz.
pub const THERMAL_NOISE_DBM_HZ: f64 = -174.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    pub pt_dbm: f64,
    pub gt_dbi: f64,
    pub gr_dbi: f64,
    pub f_hz: f64,
    pub b_hz: f64,
    pub nf_db: f64,
}

impl Default for LinkParams {
    fn default() -> Self {
        Self {
            pt_dbm: 20.0,
            gt_dbi: 10.0,
            gr_dbi: 10.0,
            f_hz: 2.4e9,
            b_hz: 10e6,
            nf_db: 5.0,
        }
    }
}

impl LinkParams {
    pub fn validate(self) -> Result<Self> {
        if !(self.f_hz > 0.0 && self.f_hz.is_finite()) {
            return Err(invalid("f_hz", format!("f_hz must be > 0 (got {})", self.f_hz)));
        }
        if !(self.b_hz > 0.0 && self.b_hz.is_finite()) {
            return Err(invalid("b_hz", format!("b_hz must be > 0 (got {})", self.b_hz)));
        }
        if !(self.nf_db >= 0.0 && self.nf_db.is_finite()) {
            return Err(invalid("nf_db", format!("nf_db must be >= 0 (got {})", self.nf_db)));
        }
        for (field, v) in [("pt_dbm", self.pt_dbm), ("gt_dbi", self.gt_dbi), ("gr_dbi", self.gr_dbi)] {
            if !v.is_finite() {
                return Err(invalid(field, format!("{field} must be finite")));
            }
        }
        Ok(self)
    }
}

/// Per-user link evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkResult {
    pub prx_dbm: Db,
    pub snr_db: Db,
    pub rate_bps: f64,
    pub plos: f64,
    pub distance_m: f64,
    pub theta_deg: f64,
}

/// `−174 + 10·log10(B) + NF`.
pub fn noise_power_dbm(lp: &LinkParams) -> f64 {
    THERMAL_NOISE_DBM_HZ + 10.0 * lp.b_hz.log10() + lp.nf_db
}

/// `prx − noise`.
pub fn snr_db(prx_dbm: Db, lp: &LinkParams) -> Db {
    prx_dbm.offset(-noise_power_dbm(lp))
}

/// Shannon rate `B·log2(1 + snr)`; a null SNR yields zero.
pub fn rate_bps(snr_db: Db, lp: &LinkParams) -> f64 {
    match snr_db {
        Db::Finite(s) => lp.b_hz * (10f64.powf(s / 10.0)).ln_1p() / std::f64::consts::LN_2,
        Db::Null => 0.0,
    }
}

/// Full link evaluation between a hovering UAV and one user. The beam gain,
/// when an array is given, is read off the pattern at the user's elevation
/// angle.
pub fn evaluate_link(
    uav: &UavPose,
    user: &GroundPoint,
    lp: &LinkParams,
    plp: &PathLossParams,
    env: &Environment,
    beam: Option<&ArrayConfig>,
) -> Result<LinkResult> {
    let ch = link_channel(uav, user, plp, env, lp.f_hz)?;
    let beam_db = match beam {
        Some(cfg) => beamforming_gain_db(ch.theta_deg, cfg)?,
        None => Db::Finite(0.0),
    };
    let prx_dbm = beam_db.offset(lp.pt_dbm + lp.gt_dbi + lp.gr_dbi - ch.path_loss_db());
    let snr = snr_db(prx_dbm, lp);
    Ok(LinkResult {
        prx_dbm,
        snr_db: snr,
        rate_bps: rate_bps(snr, lp),
        plos: ch.plos,
        distance_m: ch.distance_m,
        theta_deg: ch.theta_deg,
    })
}

/// Received power in dBm.
pub fn received_power_dbm(
    uav: &UavPose,
    user: &GroundPoint,
    lp: &LinkParams,
    plp: &PathLossParams,
    env: &Environment,
    beam: Option<&ArrayConfig>,
) -> Result<Db> {
    evaluate_link(uav, user, lp, plp, env, beam).map(|r| r.prx_dbm)
}
