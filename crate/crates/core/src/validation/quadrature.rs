//! Product quadrature over the hemisphere: Gauss-Legendre in `cos(theta)`
//! and either a periodic trapezoid or split Gauss-Legendre rule in azimuth.
//!
//! QON and FON are only piecewise smooth: `max(mu_i, mu_o)` kinks at
//! `mu_i = mu_o` and the `s > 0` switch kinks at a relative azimuth of
//! `+-pi/2`. Placing segment boundaries on those curves keeps the rule
//! spectrally accurate.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::brdf::Material;
use crate::error::{Error, Result};
use crate::math::Direction;
use crate::spectrum::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AzimuthRule {
    /// Equally spaced nodes over the full period.
    Trapezoid,
    /// Gauss-Legendre on the two half-periods split where `s = 0`.
    SplitGauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes per zenith segment.
    pub n_theta: usize,
    /// Azimuth nodes over the full period.
    pub n_phi: usize,
    pub azimuth: AzimuthRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { n_theta: 64, n_phi: 128, azimuth: AzimuthRule::SplitGauss }
    }
}

impl QuadratureSpec {
    pub fn new(n_theta: usize, n_phi: usize, azimuth: AzimuthRule) -> Result<Self> {
        if n_theta < 2 || n_phi < 4 || !n_phi.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "quadrature needs n_theta >= 2 and even n_phi >= 4 (got {n_theta} x {n_phi})"
            )));
        }
        Ok(QuadratureSpec { n_theta, n_phi, azimuth })
    }

    /// Both node counts doubled.
    pub fn refined(self) -> Self {
        QuadratureSpec { n_theta: 2 * self.n_theta, n_phi: 2 * self.n_phi, ..self }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// `P_n` from the Chebyshev initial guesses.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Maps the rule onto `[a, b]`.
fn scaled(rule: &[(f64, f64)], a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.iter().map(move |&(x, w)| (mid + half * x, half * w))
}

/// Nodes `(direction, weight)` of a hemisphere rule for the measure `d omega`,
/// with zenith breakpoints at `mu_breaks` and azimuth breakpoints (for the
/// split rule) at `phi_ref +- pi/2`.
pub fn hemisphere_nodes(spec: QuadratureSpec, mu_breaks: &[f64], phi_ref: f64) -> Vec<(Direction, f64)> {
    let zen_rule = gauss_legendre(spec.n_theta);
    let mut cuts = vec![0.0];
    cuts.extend(mu_breaks.iter().copied().filter(|&m| m > 0.0 && m < 1.0));
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let phis: Vec<(f64, f64)> = match spec.azimuth {
        AzimuthRule::Trapezoid => {
            let h = 2.0 * PI / spec.n_phi as f64;
            (0..spec.n_phi).map(|k| (phi_ref + (k as f64 + 0.5) * h, h)).collect()
        }
        AzimuthRule::SplitGauss => {
            let rule = gauss_legendre(spec.n_phi / 2);
            let front = scaled(&rule, phi_ref - FRAC_PI_2, phi_ref + FRAC_PI_2);
            let back: Vec<_> = scaled(&rule, phi_ref + FRAC_PI_2, phi_ref + 3.0 * FRAC_PI_2).collect();
            front.chain(back).collect()
        }
    };

    let mut nodes = Vec::with_capacity((cuts.len() - 1) * spec.n_theta * phis.len());
    for seg in cuts.windows(2) {
        for (mu, wm) in scaled(&zen_rule, seg[0], seg[1]) {
            for &(phi, wp) in &phis {
                nodes.push((Direction::from_cos_theta(mu, phi), wm * wp));
            }
        }
    }
    nodes
}

/// `int f(wi, wo) cos(theta_i) d omega_i` by product quadrature.
pub fn albedo_numeric(material: &Material, wo: Direction, spec: QuadratureSpec) -> Result<Spectrum> {
    if wo.z() < 0.0 {
        return Err(Error::BelowHorizon { which: "outgoing", z: wo.z() });
    }
    let phi_o = wo.y().atan2(wo.x());
    let mut sum = Spectrum::ZERO;
    for (wi, w) in hemisphere_nodes(spec, &[wo.z()], phi_o) {
        sum += material.eval(wi, wo)? * (w * wi.z());
    }
    Ok(sum)
}

/// Cosine-weighted average of [`albedo_numeric`] over outgoing directions,
/// `2 int E(mu) mu d mu` for these isotropic models.
pub fn average_albedo_numeric(material: &Material, spec: QuadratureSpec) -> Result<Spectrum> {
    let rule = gauss_legendre(spec.n_theta);
    let mut sum = Spectrum::ZERO;
    for (mu, w) in scaled(&rule, 0.0, 1.0) {
        let e = albedo_numeric(material, Direction::from_cos_theta(mu, 0.0), spec)?;
        sum += e * (2.0 * mu * w);
    }
    Ok(sum)
}

/// `int pdf(wi) d omega_i` over the upper hemisphere.
pub fn integrate_pdf(spec: QuadratureSpec, wo: Direction, pdf: impl Fn(Direction) -> Result<f64>) -> Result<f64> {
    let phi_o = wo.y().atan2(wo.x());
    let mut sum = 0.0;
    for (wi, w) in hemisphere_nodes(spec, &[], phi_o) {
        sum += pdf(wi)? * w;
    }
    Ok(sum)
}
