//! Footprint and link geometry.
//!
//! The UAV hovers at `(x, y, h)` above a flat ground plane. Ground users sit at
//! `(x, y, z)` with `z = 0` for handheld devices. Elevation angles are handled
//! in radians internally; the `_deg` functions are the degree-valued API used
//! by the LoS-probability model and the CSV output.

use crate::error::{invalid, Error, Result};

/// Elliptical coverage boundary `x^2/a^2 + y^2/b^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEllipse {
    /// Semi-axis along x, meters.
    pub a_i: f64,
    /// Semi-axis along y, meters.
    pub b_i: f64,
}

/// A user device position in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Hover position of the UAV; `h` is the altitude above ground in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavPose {
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

/// Inputs of the elevation-footprint formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FootprintParams {
    /// Effective antenna height, meters.
    pub h_n: f64,
    /// Horizontal boundary distance, meters.
    pub r_k: f64,
    /// Elevation beam width, radians.
    pub beta_k: f64,
}

impl CoverageEllipse {
    pub fn new(a_i: f64, b_i: f64) -> Result<Self> {
        if !(a_i > 0.0 && a_i.is_finite()) {
            return Err(invalid("a_i", format!("a_i must be > 0 (got {a_i})")));
        }
        if !(b_i > 0.0 && b_i.is_finite()) {
            return Err(invalid("b_i", format!("b_i must be > 0 (got {b_i})")));
        }
        Ok(Self { a_i, b_i })
    }

    /// The two boundary abscissae `±a·sqrt(1 − y²/b²)` at ordinate `y_i`.
    pub fn boundary_x(&self, y_i: f64) -> Result<(f64, f64)> {
        if !(y_i.abs() <= self.b_i) {
            return Err(Error::OutsideEllipse { y: y_i, b: self.b_i });
        }
        let ratio = y_i / self.b_i;
        let x = self.a_i * (1.0 - ratio * ratio).sqrt();
        Ok((x, -x))
    }

    /// Inclusive membership test for `p` with the ellipse centred under `center`.
    pub fn contains(&self, p: &GroundPoint, center: &UavPose) -> bool {
        let u = (p.x - center.x) / self.a_i;
        let v = (p.y - center.y) / self.b_i;
        u * u + v * v <= 1.0
    }

    /// Distance from a user to the boundary reference point parameterised by
    /// `(x_i, y_i)`, evaluated term for term as
    ///
    /// ```text
    /// sqrt((x_j − a·sqrt(1 − y_i²/b²))² + (y_j − b·sqrt(1 − x_i²/a²))² + z_j²)
    /// ```
    ///
    /// Both radicals take the positive root. The channel uses
    /// [`slant_distance`] instead.
    pub fn boundary_distance(&self, x_i: f64, y_i: f64, user: &GroundPoint) -> Result<f64> {
        if !(x_i.abs() <= self.a_i && y_i.abs() <= self.b_i) {
            return Err(Error::ParameterOutsideExtent { x: x_i, y: y_i });
        }
        let ry = y_i / self.b_i;
        let rx = x_i / self.a_i;
        let dx = user.x - self.a_i * (1.0 - ry * ry).sqrt();
        let dy = user.y - self.b_i * (1.0 - rx * rx).sqrt();
        Ok((dx * dx + dy * dy + user.z * user.z).sqrt())
    }
}

impl GroundPoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn on_ground(x: f64, y: f64) -> Self {
        Self { x, y, z: 0.0 }
    }
}

impl UavPose {
    pub const fn new(x: f64, y: f64, h: f64) -> Self {
        Self { x, y, h }
    }
}

impl FootprintParams {
    pub fn new(h_n: f64, r_k: f64, beta_k: f64) -> Result<Self> {
        if !(h_n > 0.0) {
            return Err(invalid("h_n", format!("h_n must be > 0 (got {h_n})")));
        }
        if !(r_k >= 0.0) {
            return Err(invalid("r_k", format!("r_k must be >= 0 (got {r_k})")));
        }
        check_beam_width(beta_k)?;
        Ok(Self { h_n, r_k, beta_k })
    }
}

fn check_beam_width(beta_k: f64) -> Result<()> {
    if beta_k > 0.0 && beta_k < std::f64::consts::FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::BeamWidthOutOfRange(beta_k))
    }
}

/// Horizontal distance between the UAV nadir and the user.
pub fn planar_offset(uav: &UavPose, user: &GroundPoint) -> f64 {
    (user.x - uav.x).hypot(user.y - uav.y)
}

/// 3D distance `sqrt(Δx² + Δy² + h²)`. The user's own height is not part of
/// the link geometry.
pub fn slant_distance(uav: &UavPose, user: &GroundPoint) -> f64 {
    let dx = user.x - uav.x;
    let dy = user.y - uav.y;
    (dx * dx + dy * dy + uav.h * uav.h).sqrt()
}

/// Elevation angle of the UAV seen from the user, radians in `[0, π/2]`.
pub fn elevation_angle(uav: &UavPose, user: &GroundPoint) -> Result<f64> {
    let d = slant_distance(uav, user);
    if !(d > 0.0) {
        return Err(Error::UndefinedElevation);
    }
    // clamp guards the h/d ratio against rounding above 1
    Ok((uav.h.abs() / d).min(1.0).asin())
}

/// Elevation angle in degrees, `(180/π)·asin(h / d)`.
pub fn elevation_angle_deg(uav: &UavPose, user: &GroundPoint) -> Result<f64> {
    elevation_angle(uav, user).map(f64::to_degrees)
}

/// Elevation footprint `(h_n² + r_k²)·tan β_k / (h_n + r_k·tan β_k)`.
pub fn elevation_footprint(p: &FootprintParams) -> Result<f64> {
    check_beam_width(p.beta_k)?;
    let t = p.beta_k.tan();
    let denom = p.h_n + p.r_k * t;
    if !(denom > 0.0) {
        return Err(invalid("h_n", "footprint denominator must be > 0"));
    }
    Ok((p.h_n * p.h_n + p.r_k * p.r_k) * t / denom)
}
