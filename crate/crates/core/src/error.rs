use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction is not unit length (|v| = {length})")]
    NotUnit { length: f64 },
    #[error("{which} direction is below the horizon (z = {z})")]
    BelowHorizon { which: &'static str, z: f64 },
    #[error("outgoing direction must satisfy z > 0 for sampling (z = {z})")]
    GrazingOutgoing { z: f64 },
    #[error("QON roughness sigma = {0} outside [0, pi/2]")]
    SigmaOutOfRange(f64),
    #[error("roughness r = {0} outside [0, 1]")]
    RoughnessOutOfRange(f64),
    #[error("cosine mu = {0} outside [0, 1]")]
    CosineOutOfRange(f64),
    #[error("albedo channel {0} outside [0, 1]")]
    AlbedoOutOfRange(f64),
    #[error("random variate {0} outside [0, 1]")]
    VariateOutOfRange(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
