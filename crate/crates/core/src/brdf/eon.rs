use std::f64::consts::FRAC_1_PI;

use super::fon::{albedo_unchecked, fon_average_albedo, fon_single_scatter};
use super::{check_upper, AlbedoFlavor, FonRoughness, EPSILON};
use crate::error::Result;
use crate::math::Direction;
use crate::spectrum::Spectrum;

/// Per-channel `rho^2 <E_F> / (1 - rho (1 - <E_F>))`, the geometric series
/// over second and higher bounces divided by `1 - <E_F>`. Equals 1 at unit
/// albedo.
#[inline]
fn rho_ms(rho: Spectrum, avg: f64) -> Spectrum {
    rho.map(|c| c * c * avg / (1.0 - c * (1.0 - avg)))
}

/// EON BRDF: FON single scattering plus the reciprocal multiple-scattering
/// lobe
///
/// ```text
/// f_ms = (rho_ms / pi) (1 - E_F(wi)) (1 - E_F(wo)) / (1 - <E_F>)
/// ```
pub fn eval_eon(
    rho: Spectrum,
    r: FonRoughness,
    wi: Direction,
    wo: Direction,
    flavor: AlbedoFlavor,
) -> Result<Spectrum> {
    check_upper(wi, wo)?;
    let f_ss = fon_single_scatter(r, wi, wo);
    let e_o = albedo_unchecked(wo.z(), r.value(), flavor);
    let e_i = albedo_unchecked(wi.z(), r.value(), flavor);
    let avg = fon_average_albedo(r);
    // The approximate albedo slightly exceeds 1 near grazing, hence the clamp
    // at zero on the two missing-energy factors.
    let lobe = FRAC_1_PI * (1.0 - e_o).max(0.0) * (1.0 - e_i).max(0.0) / (1.0 - avg).max(EPSILON);
    Ok(rho * f_ss + rho_ms(rho, avg) * lobe)
}

/// EON directional albedo `rho E_F + rho_ms (1 - E_F)`; exactly 1 at unit
/// `rho` for every roughness and direction.
pub fn eon_directional_albedo(
    rho: Spectrum,
    r: FonRoughness,
    wi: Direction,
    flavor: AlbedoFlavor,
) -> Result<Spectrum> {
    rho.check_albedo()?;
    if wi.z() < 0.0 {
        return Err(crate::Error::BelowHorizon { which: "incident", z: wi.z() });
    }
    let e = albedo_unchecked(wi.z(), r.value(), flavor);
    let avg = fon_average_albedo(r);
    Ok(rho * e + rho_ms(rho, avg) * (1.0 - e))
}

/// Directional albedo of the multiple-scattering lobe alone.
pub fn eon_multiscatter_albedo(rho: Spectrum, r: FonRoughness, mu: f64, flavor: AlbedoFlavor) -> Result<Spectrum> {
    super::check_cosine(mu)?;
    let e = albedo_unchecked(mu, r.value(), flavor);
    let avg = fon_average_albedo(r);
    Ok(rho_ms(rho, avg) * (1.0 - e))
}

/// Average albedo of EON: `rho <E_F> + rho_ms`.
pub fn eon_average_albedo(rho: Spectrum, r: FonRoughness) -> Spectrum {
    let avg = fon_average_albedo(r);
    rho * avg + rho_ms(rho, avg) * (1.0 - avg)
}
