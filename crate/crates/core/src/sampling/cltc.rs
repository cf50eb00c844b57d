//! Clipped linearly transformed cosine (CLTC) sampling.
//!
//! A cosine-distributed direction `wh` is pushed through the LTC matrix `M`.
//! Directions of `wh` that `M` would send below the horizon form a spherical
//! lune bounded by the plane with normal `(d, 0, 1)`; its projection onto
//! the unit disc is a half-ellipse, so sampling the remaining half-disc plus
//! half-ellipse uniformly (and lifting back to the hemisphere) draws cosine
//! weighted `wh` only from the part that maps into the upper hemisphere.

use std::f64::consts::PI;

use super::ltc::{ltc_coeffs, LtcCoeffs};
use super::{DirectionalSample, RandomPair};
use crate::brdf::FonRoughness;
use crate::math::{Direction, Vec3};

/// Tangent axes of the frame in which `wo` has zero azimuth. Falls back to
/// the world axes when `wo` is the normal.
#[inline]
pub(crate) fn ltc_basis(wo: Direction) -> (Vec3, Vec3) {
    let len_sqr = wo.x() * wo.x() + wo.y() * wo.y();
    let x = if len_sqr > 0.0 {
        let inv = 1.0 / len_sqr.sqrt();
        Vec3::new(wo.x() * inv, wo.y() * inv, 0.0)
    } else {
        Vec3::new(1.0, 0.0, 0.0)
    };
    let y = Vec3::new(-x.y, x.x, 0.0);
    (x, y)
}

#[inline]
fn from_ltc_frame(wo: Direction, v: [f64; 3]) -> Vec3 {
    let (x, y) = ltc_basis(wo);
    x * v[0] + y * v[1] + Vec3::new(0.0, 0.0, v[2])
}

#[inline]
fn to_ltc_frame(wo: Direction, wi: Direction) -> [f64; 3] {
    let (x, y) = ltc_basis(wo);
    [x.dot(wi.vec()), y.dot(wi.vec()), wi.z()]
}

/// Draws `wi` from the CLTC lobe for `wo`. `wo.z() > 0` is the caller's
/// responsibility.
pub(crate) fn cltc_sample_unchecked(wo: Direction, r: FonRoughness, u: RandomPair) -> DirectionalSample {
    let m = ltc_coeffs(wo.z(), r);
    let radius = u.u1.sqrt();
    let phi = 2.0 * PI * u.u2;
    let (sin_phi, cos_phi) = phi.sin_cos();
    let x = radius * cos_phi;
    let y = radius * sin_phi;

    let vz = m.clip_cosine();
    let s = 0.5 * (1.0 + vz);
    // Maps the disc onto the half-disc x <= 0 joined with the half-ellipse of
    // semi-axis vz on x >= 0, preserving uniform density.
    let half_chord = (1.0 - y * y).max(0.0).sqrt();
    let x = -((1.0 - s) * half_chord + s * x);
    let wh = [x, y, (1.0 - (x * x + y * y)).max(0.0).sqrt()];
    let pdf_wh = wh[2] / (PI * s);

    let wi = m.apply(wh);
    let len = (wi[0] * wi[0] + wi[1] * wi[1] + wi[2] * wi[2]).sqrt();
    let pdf = pdf_wh * len * len * len / m.det();
    let mut local = from_ltc_frame(wo, wi) * (1.0 / len);
    // Points on the clipping boundary map onto the horizon; rounding can put
    // them a few ulps below it.
    local.z = local.z.max(0.0);
    DirectionalSample { wi: Direction::from_unit_unchecked(local.normalized()), pdf }
}

/// Solid-angle density of [`cltc_sample_unchecked`] at `wi`.
pub(crate) fn cltc_pdf_unchecked(wo: Direction, wi: Direction, r: FonRoughness) -> f64 {
    let m = ltc_coeffs(wo.z(), r);
    lobe_pdf(&m, to_ltc_frame(wo, wi)) / (0.5 * (1.0 + m.clip_cosine()))
}

/// Unclipped LTC density `|M|^2 max(wh.z, 0) / (pi |adj(M) wi|^4)`.
#[inline]
fn lobe_pdf(m: &LtcCoeffs, wi: [f64; 3]) -> f64 {
    let det = m.det();
    let wh = m.apply_adjugate(wi);
    let len_sqr = wh[0] * wh[0] + wh[1] * wh[1] + wh[2] * wh[2];
    det * det / (len_sqr * len_sqr) * wh[2].max(0.0) / PI
}

/// Plain LTC sampling with the full cosine lobe. Directions landing below the
/// horizon are returned as `None`; they carry zero throughput.
pub(crate) fn ltc_sample_unchecked(wo: Direction, r: FonRoughness, u: RandomPair) -> Option<DirectionalSample> {
    let m = ltc_coeffs(wo.z(), r);
    let wh = super::cosine_hemisphere(u).vec();
    let wi = m.apply([wh.x, wh.y, wh.z]);
    let len = (wi[0] * wi[0] + wi[1] * wi[1] + wi[2] * wi[2]).sqrt();
    let local = from_ltc_frame(wo, wi) * (1.0 / len);
    if local.z < 0.0 {
        return None;
    }
    let pdf = wh.z / PI * len * len * len / m.det();
    Some(DirectionalSample { wi: Direction::from_unit_unchecked(local.normalized()), pdf })
}

pub(crate) fn ltc_pdf_unchecked(wo: Direction, wi: Direction, r: FonRoughness) -> f64 {
    let m = ltc_coeffs(wo.z(), r);
    lobe_pdf(&m, to_ltc_frame(wo, wi))
}
