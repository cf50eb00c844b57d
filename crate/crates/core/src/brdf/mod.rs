//! Evaluation of the Lambert, QON, FON and EON diffuse BRDFs and their
//! analytic directional and average albedos.
//!
//! All directions live in the local shading frame with the normal along `+z`.
//! Both directions point away from the surface.

mod eon;
mod fon;
mod qon;

use std::f64::consts::{FRAC_1_PI, FRAC_PI_2};
use std::fmt;

pub use eon::{eon_average_albedo, eon_directional_albedo, eon_multiscatter_albedo, eval_eon};
pub use fon::{
    eval_fon, fon_albedo, fon_albedo_approx, fon_albedo_exact, fon_average_albedo, fon_coeffs,
    FonCoeffs, FON_AVERAGE_CONSTANT, FON_CONSTANT, FON_G_COEFFS,
};
pub use qon::{
    eval_qon, qon_average_albedo, qon_coeffs, qon_directional_albedo, QonCoeffs,
    QON_AVERAGE_CONSTANT,
};

use crate::error::{Error, Result};
use crate::math::Direction;
use crate::spectrum::Spectrum;

/// Clamp applied to denominators that can vanish (cosine maxima and the
/// missing-energy fraction `1 - <E_F>`).
pub const EPSILON: f64 = 1.0e-7;

/// QON roughness: the standard deviation of the microfacet slope angle, in
/// radians, restricted to `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QonRoughness(f64);

impl QonRoughness {
    pub const MAX: f64 = FRAC_PI_2;

    pub fn new(sigma: f64) -> Result<Self> {
        if !(0.0..=Self::MAX).contains(&sigma) {
            return Err(Error::SigmaOutOfRange(sigma));
        }
        Ok(QonRoughness(sigma))
    }

    #[inline]
    pub fn sigma(self) -> f64 {
        self.0
    }
}

/// FON/EON roughness: an interpolation weight in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FonRoughness(f64);

impl FonRoughness {
    pub const ZERO: FonRoughness = FonRoughness(0.0);
    pub const ONE: FonRoughness = FonRoughness(1.0);

    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::RoughnessOutOfRange(r));
        }
        Ok(FonRoughness(r))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Selects the `0.33` constant of the original QON `A` coefficient or the
/// `0.57` replacement suggested for partially compensating interreflections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QonVariant {
    #[default]
    Standard,
    Footnote,
}

/// How the FON directional albedo inside the EON multiple-scattering lobe is
/// computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlbedoFlavor {
    #[default]
    Exact,
    /// Quartic fit in `1 - mu`; under 0.1% relative error.
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    Lambert,
    Qon {
        sigma: QonRoughness,
        variant: QonVariant,
    },
    Fon {
        r: FonRoughness,
    },
    Eon {
        r: FonRoughness,
        flavor: AlbedoFlavor,
    },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Lambert => "lambert",
            Model::Qon { variant: QonVariant::Standard, .. } => "qon",
            Model::Qon { variant: QonVariant::Footnote, .. } => "qon-footnote",
            Model::Fon { .. } => "fon",
            Model::Eon { .. } => "eon",
        }
    }

    /// The roughness parameter as a plain number (sigma for QON, r otherwise).
    pub fn roughness_value(&self) -> f64 {
        match *self {
            Model::Lambert => 0.0,
            Model::Qon { sigma, .. } => sigma.sigma(),
            Model::Fon { r } | Model::Eon { r, .. } => r.value(),
        }
    }

    /// Roughness driving the CLTC lobe fit, when the model has one. Lambert
    /// maps to `r = 0`, where CLTC reduces to cosine sampling.
    pub fn lobe_roughness(&self) -> Option<FonRoughness> {
        match *self {
            Model::Lambert => Some(FonRoughness::ZERO),
            Model::Qon { .. } => None,
            Model::Fon { r } | Model::Eon { r, .. } => Some(r),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Lambert => write!(f, "lambert"),
            Model::Qon { sigma, .. } => write!(f, "{}(sigma={})", self.name(), sigma.sigma()),
            Model::Fon { r } => write!(f, "fon(r={})", r.value()),
            Model::Eon { r, flavor } => {
                let fl = match flavor {
                    AlbedoFlavor::Exact => "exact",
                    AlbedoFlavor::Approx => "approx",
                };
                write!(f, "eon(r={}, {fl})", r.value())
            }
        }
    }
}

/// A BRDF model together with its single-scattering albedo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub model: Model,
    pub rho: Spectrum,
}

impl Material {
    pub fn new(model: Model, rho: Spectrum) -> Result<Self> {
        rho.check_albedo()?;
        Ok(Material { model, rho })
    }

    pub fn eval(&self, wi: Direction, wo: Direction) -> Result<Spectrum> {
        match self.model {
            Model::Lambert => {
                check_upper(wi, wo)?;
                Ok(eval_lambert(self.rho))
            }
            Model::Qon { sigma, variant } => eval_qon(self.rho, sigma, variant, wi, wo),
            Model::Fon { r } => eval_fon(self.rho, r, wi, wo),
            Model::Eon { r, flavor } => eval_eon(self.rho, r, wi, wo, flavor),
        }
    }

    /// Analytic directional albedo for outgoing cosine `mu`.
    pub fn directional_albedo(&self, mu: f64) -> Result<Spectrum> {
        check_cosine(mu)?;
        Ok(match self.model {
            Model::Lambert => self.rho,
            Model::Qon { sigma, variant } => self.rho * qon_directional_albedo(sigma, variant, mu)?,
            Model::Fon { r } => self.rho * fon_albedo_exact(mu, r)?,
            Model::Eon { r, flavor } => {
                eon_directional_albedo(self.rho, r, Direction::from_cos_theta(mu, 0.0), flavor)?
            }
        })
    }

    /// Analytic cosine-weighted average of the directional albedo.
    pub fn average_albedo(&self) -> Spectrum {
        match self.model {
            Model::Lambert => self.rho,
            Model::Qon { sigma, variant } => self.rho * qon_average_albedo(sigma, variant),
            Model::Fon { r } => self.rho * fon_average_albedo(r),
            Model::Eon { r, .. } => eon_average_albedo(self.rho, r),
        }
    }
}

/// Lambertian reflectance `rho / pi`.
#[inline]
pub fn eval_lambert(rho: Spectrum) -> Spectrum {
    rho * FRAC_1_PI
}

/// The `s` term: `wi . wo - (N . wi)(N . wo)`.
#[inline]
pub(crate) fn s_term(wi: Direction, wo: Direction) -> f64 {
    wi.dot(wo) - wi.z() * wo.z()
}

#[inline]
pub(crate) fn check_upper(wi: Direction, wo: Direction) -> Result<()> {
    if wi.z() < 0.0 {
        return Err(Error::BelowHorizon { which: "incident", z: wi.z() });
    }
    if wo.z() < 0.0 {
        return Err(Error::BelowHorizon { which: "outgoing", z: wo.z() });
    }
    Ok(())
}

#[inline]
pub(crate) fn check_cosine(mu: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::CosineOutOfRange(mu));
    }
    Ok(())
}

/// `tan(theta) * (1 - sin^3(theta))` written without the `1/mu` cancellation,
/// where `mu = cos(theta)` and `si = sin(theta)`.
#[inline]
pub(crate) fn tan_one_minus_sin_cubed(mu: f64, si: f64) -> f64 {
    si * mu * (1.0 + si + si * si) / (1.0 + si)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roughness_domains() {
        assert!(QonRoughness::new(-1e-9).is_err());
        assert!(QonRoughness::new(FRAC_PI_2).is_ok());
        assert!(QonRoughness::new(FRAC_PI_2 + 1e-9).is_err());
        assert!(FonRoughness::new(1.0).is_ok());
        assert!(FonRoughness::new(1.0 + 1e-12).is_err());
        assert!(FonRoughness::new(f64::NAN).is_err());
    }

    #[test]
    fn lambert_values() {
        assert_eq!(eval_lambert(Spectrum::ONE), Spectrum::splat(FRAC_1_PI));
        assert_eq!(eval_lambert(Spectrum::ZERO), Spectrum::ZERO);
        assert_eq!(eval_lambert(Spectrum::splat(0.5)).g, 0.5 / std::f64::consts::PI);
    }

    #[test]
    fn stable_tan_rewrite_matches_naive() {
        for &mu in &[0.9, 0.5, 0.1, 0.01] {
            let si = (1.0f64 - mu * mu).sqrt();
            let naive = si / mu * (1.0 - si * si * si);
            assert!((tan_one_minus_sin_cubed(mu, si) - naive).abs() < 1e-12 * naive.abs().max(1.0));
        }
    }

    #[test]
    fn material_rejects_bad_albedo() {
        assert!(Material::new(Model::Lambert, Spectrum::new(1.1, 0.0, 0.0)).is_err());
        assert!(Material::new(Model::Lambert, Spectrum::new(0.5, -0.1, 0.0)).is_err());
    }

    #[test]
    fn below_horizon_is_an_error() {
        let m = Material::new(Model::Lambert, Spectrum::ONE).unwrap();
        let up = Direction::NORMAL;
        let down = Direction::new(0.0, 0.6, -0.8).unwrap();
        assert!(matches!(m.eval(down, up), Err(Error::BelowHorizon { which: "incident", .. })));
        assert!(matches!(m.eval(up, down), Err(Error::BelowHorizon { which: "outgoing", .. })));
    }
}
