//! Link-level simulation of a hovering tethered UAV serving ground users.
//!
//! The crate is layered bottom-up:
//!
//! * [`environments`]: propagation presets (sigmoid parameters and excess losses).
//! * [`geometry`]: coverage ellipse, slant distance, elevation angle, footprint.
//! * [`channel`]: LoS probability and probability-averaged channel gain.
//! * [`beamforming`]: half-wavelength uniform linear array pattern and gain.
//! * [`linkbudget`]: received power, SNR and Shannon rate.
//! * [`scenario`]: deterministic sweeps, user placement and steering search.
//!
//! ```
//! use tuav_core::prelude::*;
//!
//! let urban = preset("urban")?;
//! let uav = UavPose::new(0.0, 0.0, 100.0);
//! let user = GroundPoint::on_ground(100.0, 0.0);
//! let link = evaluate_link(&uav, &user, &LinkParams::default(), &PathLossParams::default(), &urban, None)?;
//! assert!((link.theta_deg - 45.0).abs() < 1e-12);
//! # Ok::<(), tuav_core::Error>(())
//! ```

pub mod beamforming;
pub mod channel;
pub mod environments;
mod error;
pub mod geometry;
pub mod linkbudget;
pub mod scenario;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::beamforming::{
        array_factor, array_factor_oracle, beamforming_gain_db, pattern_field, ArrayConfig, Db,
        GainModel,
    };
    pub use crate::channel::{
        gain_los, gain_nlos, link_channel, mean_gain, mean_path_loss_db, p_los, p_nlos, Averaging,
        LinkChannel, PathLossModel, PathLossParams,
    };
    pub use crate::environments::{preset, presets, validate, Environment, PRESET_NAMES};
    pub use crate::geometry::{
        elevation_angle_deg, elevation_footprint, slant_distance, CoverageEllipse,
        FootprintParams, GroundPoint, UavPose,
    };
    pub use crate::linkbudget::{
        evaluate_link, noise_power_dbm, rate_bps, received_power_dbm, snr_db, LinkParams,
        LinkResult,
    };
    pub use crate::scenario::{
        best_steering, coverage_report, grid, place_users, run_plos_sweep, run_power_sweep,
        steering_scan, CoverageReport, DistanceMode, PlosRow, PowerRow, SweepKind, SweepSpec,
        UserField,
    };
    pub use crate::Error;
}
