//! Propagation environment presets.
//!
//! Each environment carries the two S-curve parameters of the LoS-probability
//! model and the excess losses (in dB) applied on top of the distance loss for
//! LoS and NLoS links.

use std::borrow::Cow;
use std::fmt;

use crate::error::{Error, Result};

/// Names accepted by [`preset`], in table order.
pub const PRESET_NAMES: [&str; 4] = ["urban", "suburban", "dense-urban", "highrise-urban"];

/// A propagation environment.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    pub name: Cow<'static, str>,
    /// Sigmoid offset parameter (dimensionless).
    pub a: f64,
    /// Sigmoid slope parameter (per degree).
    pub b: f64,
    /// Excess loss on LoS links, dB.
    pub eta_los_db: f64,
    /// Excess loss on NLoS links, dB.
    pub eta_nlos_db: f64,
}

pub const URBAN: Environment = Environment {
    name: Cow::Borrowed("urban"),
    a: 9.61,
    b: 0.16,
    eta_los_db: 1.0,
    eta_nlos_db: 20.0,
};

pub const SUBURBAN: Environment = Environment {
    name: Cow::Borrowed("suburban"),
    a: 4.88,
    b: 0.43,
    eta_los_db: 1.0,
    eta_nlos_db: 21.0,
};

pub const DENSE_URBAN: Environment = Environment {
    name: Cow::Borrowed("dense-urban"),
    a: 12.08,
    b: 0.11,
    eta_los_db: 1.6,
    eta_nlos_db: 23.0,
};

pub const HIGHRISE_URBAN: Environment = Environment {
    name: Cow::Borrowed("highrise-urban"),
    a: 15.05,
    b: 0.08,
    eta_los_db: 2.3,
    eta_nlos_db: 34.0,
};

/// All presets in table order.
pub fn presets() -> [Environment; 4] {
    [URBAN, SUBURBAN, DENSE_URBAN, HIGHRISE_URBAN]
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<Environment> {
    match name {
        "urban" => Ok(URBAN),
        "suburban" => Ok(SUBURBAN),
        "dense-urban" => Ok(DENSE_URBAN),
        "highrise-urban" => Ok(HIGHRISE_URBAN),
        _ => Err(Error::UnknownEnvironment {
            name: name.to_string(),
            valid: PRESET_NAMES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

impl Environment {
    /// Builds a custom environment and validates it.
    pub fn custom(
        name: impl Into<String>,
        a: f64,
        b: f64,
        eta_los_db: f64,
        eta_nlos_db: f64,
    ) -> Result<Self> {
        validate(Environment {
            name: Cow::Owned(name.into()),
            a,
            b,
            eta_los_db,
            eta_nlos_db,
        })
    }

    /// Linear power factor of the LoS excess loss, `10^(-eta_los_db / 10)`.
    pub fn los_factor(&self) -> f64 {
        db_to_linear(-self.eta_los_db)
    }

    /// Linear power factor of the NLoS excess loss.
    pub fn nlos_factor(&self) -> f64 {
        db_to_linear(-self.eta_nlos_db)
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} a={} b={} eta_los_db={} eta_nlos_db={}",
            self.name, self.a, self.b, self.eta_los_db, self.eta_nlos_db
        )
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Checks every environment invariant, reporting all violations at once.
pub fn validate(env: Environment) -> Result<Environment> {
    let mut violations = Vec::new();
    if !(env.a > 0.0) || !env.a.is_finite() {
        violations.push(format!("a must be > 0 (got {})", env.a));
    }
    if !(env.b > 0.0) || !env.b.is_finite() {
        violations.push(format!("b must be > 0 (got {})", env.b));
    }
    if !(env.eta_los_db >= 0.0) || !env.eta_los_db.is_finite() {
        violations.push(format!("eta_los_db must be >= 0 (got {})", env.eta_los_db));
    }
    if !env.eta_nlos_db.is_finite() {
        violations.push(format!("eta_nlos_db must be finite (got {})", env.eta_nlos_db));
    } else if env.eta_nlos_db < env.eta_los_db {
        violations.push(format!(
            "eta_nlos_db < eta_los_db ({} < {})",
            env.eta_nlos_db, env.eta_los_db
        ));
    }
    if violations.is_empty() {
        Ok(env)
    } else {
        Err(Error::InvalidEnvironment {
            name: env.name.into_owned(),
            violations,
        })
    }
}
