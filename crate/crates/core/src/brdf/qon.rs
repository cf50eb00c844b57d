use std::f64::consts::{FRAC_1_PI, FRAC_PI_2, PI};

use super::{check_cosine, check_upper, s_term, tan_one_minus_sin_cubed, QonRoughness, QonVariant, EPSILON};
use crate::error::Result;
use crate::math::Direction;
use crate::spectrum::Spectrum;

/// `2/3 - 64/(45 pi)`, the weight of `B_q` in the QON average albedo.
pub const QON_AVERAGE_CONSTANT: f64 = 2.0 / 3.0 - 64.0 / (45.0 * PI);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QonCoeffs {
    pub a: f64,
    pub b: f64,
}

pub fn qon_coeffs(sigma: QonRoughness, variant: QonVariant) -> QonCoeffs {
    let s2 = sigma.sigma() * sigma.sigma();
    let k = match variant {
        QonVariant::Standard => 0.33,
        QonVariant::Footnote => 0.57,
    };
    QonCoeffs {
        a: 1.0 - 0.5 * s2 / (s2 + k),
        b: 0.45 * s2 / (s2 + 0.09),
    }
}

/// QON BRDF `(rho/pi)(A + B s / t)` with `1/t = 0` for `s <= 0`.
///
/// Both branches vanish at `s = 0`, so the value is continuous there; the
/// slope in `s` jumps from 0 to `B / t`.
pub fn eval_qon(
    rho: Spectrum,
    sigma: QonRoughness,
    variant: QonVariant,
    wi: Direction,
    wo: Direction,
) -> Result<Spectrum> {
    check_upper(wi, wo)?;
    let QonCoeffs { a, b } = qon_coeffs(sigma, variant);
    let s = s_term(wi, wo);
    let s_over_t = if s > 0.0 { s / wi.z().max(wo.z()).max(EPSILON) } else { 0.0 };
    Ok(rho * (FRAC_1_PI * (a + b * s_over_t)))
}

/// `G_q(theta)`, the projected-solid-angle integral of `g_q`. At `mu = 0`
/// the limit `pi/2` is returned.
pub(crate) fn qon_g(mu: f64) -> f64 {
    if mu <= 0.0 {
        return FRAC_PI_2;
    }
    let si = (1.0 - mu * mu).max(0.0).sqrt();
    let theta = mu.min(1.0).acos();
    si * (theta - si * mu) + (2.0 / 3.0) * tan_one_minus_sin_cubed(mu, si)
}

/// Directional albedo of QON at unit `rho`, `A + (B/pi) G_q`.
pub fn qon_directional_albedo(sigma: QonRoughness, variant: QonVariant, mu: f64) -> Result<f64> {
    check_cosine(mu)?;
    let QonCoeffs { a, b } = qon_coeffs(sigma, variant);
    if mu == 0.0 {
        return Ok(a + 0.5 * b);
    }
    Ok(a + b * FRAC_1_PI * qon_g(mu))
}

pub fn qon_average_albedo(sigma: QonRoughness, variant: QonVariant) -> f64 {
    let QonCoeffs { a, b } = qon_coeffs(sigma, variant);
    a + QON_AVERAGE_CONSTANT * b
}
