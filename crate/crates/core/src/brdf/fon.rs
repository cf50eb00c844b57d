use std::f64::consts::{FRAC_1_PI, PI};

use super::{check_cosine, check_upper, qon::qon_g, s_term, AlbedoFlavor, FonRoughness, EPSILON};
use crate::error::Result;
use crate::math::Direction;
use crate::spectrum::Spectrum;

/// `1/2 - 2/(3 pi)`: `A_F = 1 / (1 + FON_CONSTANT r)`.
pub const FON_CONSTANT: f64 = 0.5 - 2.0 / (3.0 * PI);

/// `2/3 - 28/(15 pi)`: `<E_F> = A_F (1 + FON_AVERAGE_CONSTANT r)`.
pub const FON_AVERAGE_CONSTANT: f64 = 2.0 / 3.0 - 28.0 / (15.0 * PI);

/// Coefficients `g_1..g_4` of the quartic fit `G_F / pi = sum g_k (1 - mu)^k`.
pub const FON_G_COEFFS: [f64; 4] = [0.0571085289, 0.491881867, -0.332181442, 0.0714429953];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FonCoeffs {
    pub a: f64,
    pub b: f64,
}

pub fn fon_coeffs(r: FonRoughness) -> FonCoeffs {
    let a = 1.0 / (1.0 + FON_CONSTANT * r.value());
    FonCoeffs { a, b: r.value() * a }
}

/// FON BRDF. Same form as QON but `1/t = 1` when `s <= 0`.
pub fn eval_fon(rho: Spectrum, r: FonRoughness, wi: Direction, wo: Direction) -> Result<Spectrum> {
    check_upper(wi, wo)?;
    Ok(rho * fon_single_scatter(r, wi, wo))
}

/// FON value at unit albedo. Preconditions are checked by the caller.
#[inline]
pub(crate) fn fon_single_scatter(r: FonRoughness, wi: Direction, wo: Direction) -> f64 {
    let s = s_term(wi, wo);
    let s_over_t = if s > 0.0 { s / wi.z().max(wo.z()).max(EPSILON) } else { s };
    let a = 1.0 / (1.0 + FON_CONSTANT * r.value());
    FRAC_1_PI * a * (1.0 + r.value() * s_over_t)
}

/// Analytic FON directional albedo at unit `rho`, `A_F + (B_F/pi) G_F` with
/// `G_F = G_q - (2/3) sin(theta)`. Equals 1 at `mu = 0` for every `r`.
pub fn fon_albedo_exact(mu: f64, r: FonRoughness) -> Result<f64> {
    check_cosine(mu)?;
    Ok(albedo_exact_unchecked(mu, r.value()))
}

#[inline]
pub(crate) fn albedo_exact_unchecked(mu: f64, r: f64) -> f64 {
    if mu <= 0.0 {
        return 1.0;
    }
    let a = 1.0 / (1.0 + FON_CONSTANT * r);
    let si = (1.0 - mu * mu).max(0.0).sqrt();
    let g = qon_g(mu) - (2.0 / 3.0) * si;
    a + r * a * FRAC_1_PI * g
}

/// Quartic-fit FON directional albedo.
pub fn fon_albedo_approx(mu: f64, r: FonRoughness) -> Result<f64> {
    check_cosine(mu)?;
    Ok(albedo_approx_unchecked(mu, r.value()))
}

#[inline]
pub(crate) fn albedo_approx_unchecked(mu: f64, r: f64) -> f64 {
    let [g1, g2, g3, g4] = FON_G_COEFFS;
    let m = 1.0 - mu;
    let g_over_pi = m * (g1 + m * (g2 + m * (g3 + m * g4)));
    (1.0 + r * g_over_pi) / (1.0 + FON_CONSTANT * r)
}

#[inline]
pub(crate) fn albedo_unchecked(mu: f64, r: f64, flavor: AlbedoFlavor) -> f64 {
    match flavor {
        AlbedoFlavor::Exact => albedo_exact_unchecked(mu, r),
        AlbedoFlavor::Approx => albedo_approx_unchecked(mu, r),
    }
}

pub fn fon_albedo(mu: f64, r: FonRoughness, flavor: AlbedoFlavor) -> Result<f64> {
    check_cosine(mu)?;
    Ok(albedo_unchecked(mu, r.value(), flavor))
}

pub fn fon_average_albedo(r: FonRoughness) -> f64 {
    let a = 1.0 / (1.0 + FON_CONSTANT * r.value());
    a * (1.0 + FON_AVERAGE_CONSTANT * r.value())
}
