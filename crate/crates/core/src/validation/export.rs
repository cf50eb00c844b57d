//! Curve data behind the albedo and sampler-statistics plots, with a fixed
//! CSV layout.
//!
//! Albedo CSV header: `model,r_or_sigma,mu,quantity,analytic,numeric`.
//! Statistics CSV header: `strategy,r,theta_deg,variance,max,mean`.

use std::io::Write;

use super::quadrature::{albedo_numeric, QuadratureSpec};
use super::stats::weight_stats;
use crate::brdf::{AlbedoFlavor, FonRoughness, Material};
use crate::error::{Error, Result};
use crate::math::Direction;
use crate::sampling::Strategy;

pub const ALBEDO_HEADER: [&str; 6] = ["model", "r_or_sigma", "mu", "quantity", "analytic", "numeric"];
pub const STATS_HEADER: [&str; 6] = ["strategy", "r", "theta_deg", "variance", "max", "mean"];

#[derive(Debug, Clone, PartialEq)]
pub struct AlbedoRow {
    pub model: &'static str,
    pub roughness: f64,
    pub mu: f64,
    pub quantity: &'static str,
    pub analytic: f64,
    pub numeric: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub strategy: Strategy,
    pub r: f64,
    pub theta_deg: f64,
    pub variance: f64,
    pub max: f64,
    pub mean: f64,
}

/// `points` evenly spaced values on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![lo],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}

/// Analytic and quadrature directional albedo (channel mean) on `points`
/// evenly spaced outgoing cosines in `[0, 1]`.
pub fn albedo_curve(material: &Material, points: usize, spec: QuadratureSpec) -> Result<Vec<AlbedoRow>> {
    linspace(0.0, 1.0, points)
        .into_iter()
        .map(|mu| {
            let analytic = material.directional_albedo(mu)?.average();
            let numeric = albedo_numeric(material, Direction::from_cos_theta(mu, 0.0), spec)?.average();
            Ok(AlbedoRow {
                model: material.model.name(),
                roughness: material.model.roughness_value(),
                mu,
                quantity: "directional_albedo",
                analytic,
                numeric,
            })
        })
        .collect()
}

/// Weight statistics for every strategy at each zenith angle (degrees).
pub fn stats_curve(
    strategies: &[Strategy],
    r: FonRoughness,
    thetas_deg: &[f64],
    n: u64,
    seed: u64,
) -> Result<Vec<StatsRow>> {
    let mut rows = Vec::with_capacity(strategies.len() * thetas_deg.len());
    for &strategy in strategies {
        for &theta in thetas_deg {
            let mu = theta.to_radians().cos();
            let s = weight_stats(strategy, r, mu, n, seed, AlbedoFlavor::Exact)?;
            rows.push(StatsRow {
                strategy,
                r: r.value(),
                theta_deg: theta,
                variance: s.variance,
                max: s.max,
                mean: s.mean,
            });
        }
    }
    Ok(rows)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_albedo_csv<W: Write>(out: W, rows: &[AlbedoRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ALBEDO_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.model.to_string(),
            r.roughness.to_string(),
            r.mu.to_string(),
            r.quantity.to_string(),
            format!("{:.12e}", r.analytic),
            format!("{:.12e}", r.numeric),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_stats_csv<W: Write>(out: W, rows: &[StatsRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(STATS_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.strategy.name().to_string(),
            r.r.to_string(),
            r.theta_deg.to_string(),
            format!("{:.12e}", r.variance),
            format!("{:.12e}", r.max),
            format!("{:.12e}", r.mean),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brdf::Model;
    use crate::spectrum::Spectrum;

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn albedo_csv_layout() {
        let m = Material::new(Model::Lambert, Spectrum::ONE).unwrap();
        let spec = QuadratureSpec::new(16, 32, super::super::AzimuthRule::SplitGauss).unwrap();
        let rows = albedo_curve(&m, 3, spec).unwrap();
        let mut buf = Vec::new();
        write_albedo_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "model,r_or_sigma,mu,quantity,analytic,numeric");
        assert!(lines[1].starts_with("lambert,0,0,directional_albedo,1.000000000000e0,"));
    }
}
