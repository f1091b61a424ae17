use thiserror::Error;

/// Errors raised by the simulation primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown environment `{name}` (valid: {})", valid.join(", "))]
    UnknownEnvironment { name: String, valid: Vec<String> },

    #[error("invalid environment `{name}`: {}", violations.join("; "))]
    InvalidEnvironment { name: String, violations: Vec<String> },

    #[error("{field}: {message}")]
    InvalidParameter { field: &'static str, message: String },

    #[error("point outside ellipse extent: |y| = {y} > b = {b}")]
    OutsideEllipse { y: f64, b: f64 },

    #[error("ellipse parameter outside extent: ({x}, {y})")]
    ParameterOutsideExtent { x: f64, y: f64 },

    #[error("undefined elevation angle: UAV and user are coincident")]
    UndefinedElevation,

    #[error("beam width out of range: {0} rad (must lie in (0, pi/2))")]
    BeamWidthOutOfRange(f64),

    #[error("elevation angle out of range: {0} deg (must lie in [0, 90])")]
    ElevationOutOfRange(f64),

    #[error("observation angle out of range: {0} deg (must lie in [-90, 90])")]
    ObservationAngleOutOfRange(f64),

    #[error("nonpositive distance: {0} m")]
    NonpositiveDistance(f64),

    #[error("{field}: {message}")]
    InvalidSweep { field: &'static str, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        message: message.into(),
    }
}
