//! Half-wavelength uniform linear array.
//!
//! With `u = sin θ − sin φ` the normalised array factor of an `M`-element
//! array steered to `φ` is
//!
//! ```text
//! AF(θ) = | sin(Mπu/2) / (M·sin(πu/2)) |²
//! ```
//!
//! which lies in `[0, 1]` and equals 1 at boresight. The removable
//! singularities at `u = 0` and `u = ±2` are evaluated as their limits.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Window around `sin(πu/2) = 0` treated as the analytic limit.
const SINGULAR_EPS: f64 = 1e-12;
/// Window around `Mu/2 ∈ ℤ` treated as an exact pattern null.
const NULL_EPS: f64 = 1e-12;

/// How the normalised pattern is scaled into an absolute power gain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GainModel {
    /// `M · AF`: total radiated power is conserved, boresight gain is `M`.
    #[default]
    Directivity,
    /// `M² · AF`: each element radiates full power and the fields add coherently.
    Coherent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    /// Number of elements, `>= 1`.
    pub m: u32,
    /// Steering angle in degrees, `[-90, 90]`.
    pub phi_deg: f64,
    pub gain_model: GainModel,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        Self {
            m: 8,
            phi_deg: 0.0,
            gain_model: GainModel::Directivity,
        }
    }
}

impl ArrayConfig {
    pub fn new(m: u32, phi_deg: f64, gain_model: GainModel) -> Result<Self> {
        Self { m, phi_deg, gain_model }.validate()
    }

    pub fn validate(self) -> Result<Self> {
        if self.m < 1 {
            return Err(invalid("m", "m must be >= 1"));
        }
        if !(-90.0..=90.0).contains(&self.phi_deg) {
            return Err(invalid(
                "phi_deg",
                format!("phi_deg must lie in [-90, 90] (got {})", self.phi_deg),
            ));
        }
        Ok(self)
    }

    /// Same array re-steered to `phi_deg`.
    pub fn steered(self, phi_deg: f64) -> Self {
        Self { phi_deg, ..self }
    }
}

/// A decibel quantity that may be an exact null (−∞ dB).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Db {
    Finite(f64),
    Null,
}

impl Db {
    pub fn from_linear(x: f64) -> Self {
        if x > 0.0 {
            Db::Finite(10.0 * x.log10())
        } else {
            Db::Null
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Db::Finite(v) => Some(v),
            Db::Null => None,
        }
    }

    pub fn is_null(self) -> bool {
        matches!(self, Db::Null)
    }

    /// Adds a finite offset; nulls stay null.
    pub fn offset(self, delta: f64) -> Self {
        match self {
            Db::Finite(v) => Db::Finite(v + delta),
            Db::Null => Db::Null,
        }
    }

    /// The value as `f64`, with nulls mapped to negative infinity.
    pub fn to_f64(self) -> f64 {
        self.finite().unwrap_or(f64::NEG_INFINITY)
    }
}

impl fmt::Display for Db {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Db::Finite(v) => write!(f, "{v}"),
            Db::Null => f.write_str("null"),
        }
    }
}

fn check_observation(theta_deg: f64) -> Result<()> {
    if (-90.0..=90.0).contains(&theta_deg) {
        Ok(())
    } else {
        Err(Error::ObservationAngleOutOfRange(theta_deg))
    }
}

/// Signed normalised field `sin(Mπu/2) / (M·sin(πu/2))`; its square is
/// [`array_factor`]. Useful for locating nulls by sign change.
pub fn pattern_field(theta_deg: f64, cfg: &ArrayConfig) -> Result<f64> {
    check_observation(theta_deg)?;
    let m = f64::from(cfg.m);
    let u = theta_deg.to_radians().sin() - cfg.phi_deg.to_radians().sin();
    if u.abs() < SINGULAR_EPS {
        return Ok(1.0);
    }
    if (u.abs() - 2.0).abs() < SINGULAR_EPS {
        // grating lobe at u = ±2: the limit is (−1)^(M+1)
        return Ok(if cfg.m % 2 == 1 { 1.0 } else { -1.0 });
    }
    let half_turns = m * u / 2.0;
    let nearest = half_turns.round();
    if (half_turns - nearest).abs() < NULL_EPS && nearest.rem_euclid(m) != 0.0 {
        return Ok(0.0);
    }
    Ok((PI * half_turns).sin() / (m * (FRAC_PI_2 * u).sin()))
}

/// Normalised array power gain in `[0, 1]`.
pub fn array_factor(theta_deg: f64, cfg: &ArrayConfig) -> Result<f64> {
    let f = pattern_field(theta_deg, cfg)?;
    Ok((f * f).min(1.0))
}

/// `|a(θ)^H w(φ)|² / M²` evaluated as an explicit sum over elements with
/// steering vector entries `exp(iπ·k·sin x)`.
pub fn array_factor_oracle(theta_deg: f64, cfg: &ArrayConfig) -> Result<f64> {
    check_observation(theta_deg)?;
    let st = theta_deg.to_radians().sin();
    let sp = cfg.phi_deg.to_radians().sin();
    let sum: Complex64 = (0..cfg.m)
        .map(|k| {
            let k = f64::from(k);
            let a = Complex64::from_polar(1.0, PI * k * st);
            let w = Complex64::from_polar(1.0, PI * k * sp);
            a.conj() * w
        })
        .sum();
    let m = f64::from(cfg.m);
    Ok(sum.norm_sqr() / (m * m))
}

/// Absolute beamforming gain in dB at observation angle `theta_deg`.
pub fn beamforming_gain_db(theta_deg: f64, cfg: &ArrayConfig) -> Result<Db> {
    let af = array_factor(theta_deg, cfg)?;
    let m = f64::from(cfg.m);
    let scale = match cfg.gain_model {
        GainModel::Directivity => m,
        GainModel::Coherent => m * m,
    };
    Ok(Db::from_linear(scale * af))
}
