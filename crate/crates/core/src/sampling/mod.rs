//! Importance sampling of EON: the fitted LTC lobe, CLTC clipping and the
//! one-sample MIS combination with a uniform hemisphere lobe.
//!
//! Samplers never own a random generator; callers pass [`RandomPair`]s.

mod cltc;
mod ltc;

use std::f64::consts::{FRAC_1_PI, PI};
use std::fmt;
use std::str::FromStr;

pub use ltc::{ltc_coeffs, LtcCoeffs};

use crate::brdf::{FonRoughness, Model};
use crate::error::{Error, Result};
use crate::math::{Direction, Vec3};

/// Density of the uniform hemisphere lobe, `1/(2 pi)`.
pub const UNIFORM_PDF: f64 = 0.5 * FRAC_1_PI;

/// Two uniform variates in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomPair {
    pub u1: f64,
    pub u2: f64,
}

impl RandomPair {
    pub fn new(u1: f64, u2: f64) -> Result<Self> {
        for u in [u1, u2] {
            if !(0.0..=1.0).contains(&u) {
                return Err(Error::VariateOutOfRange(u));
            }
        }
        Ok(RandomPair { u1, u2 })
    }
}

/// A sampled incident direction with its solid-angle density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalSample {
    pub wi: Direction,
    pub pdf: f64,
}

fn check_outgoing(wo: Direction) -> Result<()> {
    if wo.z() > 0.0 {
        Ok(())
    } else {
        Err(Error::GrazingOutgoing { z: wo.z() })
    }
}

/// Cosine-weighted hemisphere direction by lifting a uniform disc point.
pub fn cosine_hemisphere(u: RandomPair) -> Direction {
    let radius = u.u1.sqrt();
    let (s, c) = (2.0 * PI * u.u2).sin_cos();
    let z = (1.0 - u.u1).max(0.0).sqrt();
    Direction::from_unit_unchecked(Vec3::new(radius * c, radius * s, z))
}

/// Uniform hemisphere direction with `z = u1`.
pub fn uniform_lobe_sample(u: RandomPair) -> Direction {
    let sin_theta = (1.0 - u.u1 * u.u1).max(0.0).sqrt();
    let (s, c) = (2.0 * PI * u.u2).sin_cos();
    Direction::from_unit_unchecked(Vec3::new(sin_theta * c, sin_theta * s, u.u1))
}

/// Draws `wi` from the CLTC lobe fitted to EON at `wo`.
pub fn cltc_sample(wo: Direction, r: FonRoughness, u: RandomPair) -> Result<DirectionalSample> {
    check_outgoing(wo)?;
    Ok(cltc::cltc_sample_unchecked(wo, r, u))
}

/// Density of [`cltc_sample`]; zero for directions outside the clipped lobe.
pub fn cltc_pdf(wo: Direction, wi: Direction, r: FonRoughness) -> Result<f64> {
    check_outgoing(wo)?;
    if wi.z() < 0.0 {
        return Ok(0.0);
    }
    Ok(cltc::cltc_pdf_unchecked(wo, wi, r))
}

/// Probability of picking the uniform lobe in the MIS mixture. Zero at
/// `r = 0`, where the mixture collapses to cosine sampling.
#[inline]
pub fn uniform_lobe_probability(mu: f64, r: FonRoughness) -> f64 {
    r.value().powf(0.1) * (0.162925 + mu * (-0.372058 + (0.538233 - 0.290822 * mu) * mu))
}

/// One-sample MIS of the uniform and CLTC lobes. The returned pdf is the full
/// mixture density whichever lobe produced the direction.
pub fn sample_eon(wo: Direction, r: FonRoughness, u: RandomPair) -> Result<DirectionalSample> {
    check_outgoing(wo)?;
    let p_u = uniform_lobe_probability(wo.z(), r);
    let p_c = 1.0 - p_u;
    // Strict comparison: at p_u = 0 the branch must never be taken, or
    // u1 = 0 would divide zero by zero.
    let (wi, pdf_c) = if u.u1 < p_u {
        let wi = uniform_lobe_sample(RandomPair { u1: u.u1 / p_u, u2: u.u2 });
        (wi, cltc::cltc_pdf_unchecked(wo, wi, r))
    } else {
        let s = cltc::cltc_sample_unchecked(wo, r, RandomPair { u1: (u.u1 - p_u) / p_c, u2: u.u2 });
        (s.wi, s.pdf)
    };
    Ok(DirectionalSample { wi, pdf: p_u * UNIFORM_PDF + p_c * pdf_c })
}

/// Mixture density of [`sample_eon`]; zero below the horizon.
pub fn pdf_eon(wo: Direction, wi: Direction, r: FonRoughness) -> Result<f64> {
    check_outgoing(wo)?;
    if wi.z() < 0.0 {
        return Ok(0.0);
    }
    let p_u = uniform_lobe_probability(wo.z(), r);
    Ok(p_u * UNIFORM_PDF + (1.0 - p_u) * cltc::cltc_pdf_unchecked(wo, wi, r))
}

/// Sampling strategies compared by the statistics suite and the renderer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Cosine,
    Uniform,
    /// CLTC without the uniform lobe.
    Cltc,
    /// CLTC combined with the uniform lobe (the production sampler).
    CltcMis,
    /// Unclipped LTC; below-horizon draws are wasted. Diagnostic only.
    Ltc,
}

impl Strategy {
    /// The four strategies reported by the statistics tooling.
    pub const REPORTED: [Strategy; 4] = [Strategy::Cosine, Strategy::Uniform, Strategy::Cltc, Strategy::CltcMis];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Cosine => "cosine",
            Strategy::Uniform => "uniform",
            Strategy::Cltc => "cltc",
            Strategy::CltcMis => "cltc-mis",
            Strategy::Ltc => "ltc",
        }
    }

    /// Roughness that drives the lobe fit when sampling `model`. Cosine and
    /// uniform sampling ignore it; the LTC-based strategies need a model with
    /// an `r` parameter.
    pub fn roughness_for(self, model: &Model) -> Result<FonRoughness> {
        match (self, model.lobe_roughness()) {
            (Strategy::Cosine | Strategy::Uniform, r) => Ok(r.unwrap_or(FonRoughness::ZERO)),
            (_, Some(r)) => Ok(r),
            (_, None) => Err(Error::InvalidParameter(format!(
                "sampler '{self}' needs a model with an r roughness, not {}",
                model.name()
            ))),
        }
    }

    /// Draws a direction. `None` means the draw was wasted (only possible for
    /// [`Strategy::Ltc`]).
    pub fn sample(self, wo: Direction, r: FonRoughness, u: RandomPair) -> Result<Option<DirectionalSample>> {
        Ok(match self {
            Strategy::Cosine => {
                let wi = cosine_hemisphere(u);
                Some(DirectionalSample { wi, pdf: wi.z() * FRAC_1_PI })
            }
            Strategy::Uniform => Some(DirectionalSample { wi: uniform_lobe_sample(u), pdf: UNIFORM_PDF }),
            Strategy::Cltc => Some(cltc_sample(wo, r, u)?),
            Strategy::CltcMis => Some(sample_eon(wo, r, u)?),
            Strategy::Ltc => {
                check_outgoing(wo)?;
                cltc::ltc_sample_unchecked(wo, r, u)
            }
        })
    }

    pub fn pdf(self, wo: Direction, wi: Direction, r: FonRoughness) -> Result<f64> {
        if wi.z() < 0.0 {
            return Ok(0.0);
        }
        match self {
            Strategy::Cosine => Ok(wi.z() * FRAC_1_PI),
            Strategy::Uniform => Ok(UNIFORM_PDF),
            Strategy::Cltc => cltc_pdf(wo, wi, r),
            Strategy::CltcMis => pdf_eon(wo, wi, r),
            Strategy::Ltc => {
                check_outgoing(wo)?;
                Ok(cltc::ltc_pdf_unchecked(wo, wi, r))
            }
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cosine" => Strategy::Cosine,
            "uniform" => Strategy::Uniform,
            "cltc" => Strategy::Cltc,
            "cltc-mis" => Strategy::CltcMis,
            "ltc" => Strategy::Ltc,
            _ => return Err(Error::InvalidParameter(format!("unknown sampler '{s}'"))),
        })
    }
}
