//! Pearson chi-square test of a directional sampler against its density.
//!
//! Draws are binned on a `(cos(theta), phi)` grid. Expected counts come from
//! integrating the density over each cell with a sub-cell midpoint rule,
//! refined further in the rows nearest the horizon where the EON lobe is
//! steepest. Cells whose expected count is below [`MIN_EXPECTED`] are pooled.

use std::f64::consts::PI;

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::rng::SampleStream;
use super::stats::SHARDS;
use crate::brdf::FonRoughness;
use crate::error::{Error, Result};
use crate::math::Direction;
use crate::sampling::{pdf_eon, sample_eon, RandomPair};

pub const MIN_EXPECTED: f64 = 5.0;

/// Rows with `cos(theta)` below this get [`GRAZING_REFINE`] times more
/// subdivisions per axis.
const GRAZING_COS: f64 = 0.125;
const SUBDIVISIONS: usize = 6;
const GRAZING_REFINE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bins {
    /// Bins in `cos(theta)` over `[0, 1]`.
    pub theta: usize,
    /// Bins in azimuth over `[0, 2 pi)`.
    pub phi: usize,
}

impl Default for Bins {
    fn default() -> Self {
        Bins { theta: 32, phi: 64 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chi2Report {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    pub bins: Bins,
    pub samples: u64,
    /// Draws that landed outside the hemisphere or had a non-finite pdf.
    pub invalid: u64,
}

impl Chi2Report {
    pub fn passes(&self, significance: f64) -> bool {
        self.invalid == 0 && self.p_value > significance
    }
}

/// Tests [`sample_eon`] against [`pdf_eon`] at `(mu_o, r)`.
pub fn chi2_sampler_test(r: FonRoughness, mu_o: f64, n: u64, bins: Bins, seed: u64) -> Result<Chi2Report> {
    if !(mu_o > 0.0 && mu_o <= 1.0) {
        return Err(Error::CosineOutOfRange(mu_o));
    }
    let wo = Direction::from_cos_theta(mu_o, 0.0);
    chi2_test(
        |u| sample_eon(wo, r, u).map(|s| s.wi),
        |wi| pdf_eon(wo, wi, r),
        n,
        bins,
        seed,
    )
}

/// Generic chi-square test of `sample` against the solid-angle density `pdf`.
pub fn chi2_test<S, P>(sample: S, pdf: P, n: u64, bins: Bins, seed: u64) -> Result<Chi2Report>
where
    S: Fn(RandomPair) -> Result<Direction> + Sync,
    P: Fn(Direction) -> Result<f64> + Sync,
{
    if bins.theta == 0 || bins.phi == 0 || n == 0 {
        return Err(Error::InvalidParameter("chi-square test needs bins and samples".into()));
    }
    let cells = bins.theta * bins.phi;

    let histograms: Vec<Result<(Vec<u64>, u64)>> = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = n / SHARDS + u64::from(shard < n % SHARDS);
            let mut stream = SampleStream::new(seed, shard);
            let mut hist = vec![0u64; cells];
            let mut invalid = 0;
            for _ in 0..count {
                let wi = sample(stream.next_pair())?;
                match cell_index(wi, bins) {
                    Some(k) => hist[k] += 1,
                    None => invalid += 1,
                }
            }
            Ok((hist, invalid))
        })
        .collect();
    let mut observed = vec![0u64; cells];
    let mut invalid = 0;
    for h in histograms {
        let (hist, inv) = h?;
        observed.iter_mut().zip(hist).for_each(|(o, c)| *o += c);
        invalid += inv;
    }

    let expected: Vec<Result<f64>> = (0..cells)
        .into_par_iter()
        .map(|k| Ok(n as f64 * cell_integral(&pdf, k / bins.phi, k % bins.phi, bins)?))
        .collect();
    let expected = expected.into_iter().collect::<Result<Vec<f64>>>()?;

    let (statistic, used) = pearson(&observed, &expected);
    let dof = used.saturating_sub(1).max(1);
    let p_value = if statistic.is_finite() {
        ChiSquared::new(dof as f64)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .sf(statistic)
    } else {
        0.0
    };
    Ok(Chi2Report { statistic, dof, p_value, bins, samples: n, invalid })
}

fn cell_index(wi: Direction, bins: Bins) -> Option<usize> {
    let mu = wi.z();
    if !(0.0..=1.0).contains(&mu) || !wi.x().is_finite() {
        return None;
    }
    let mut phi = wi.y().atan2(wi.x());
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    let it = ((mu * bins.theta as f64) as usize).min(bins.theta - 1);
    let ip = ((phi / (2.0 * PI) * bins.phi as f64) as usize).min(bins.phi - 1);
    Some(it * bins.phi + ip)
}

fn cell_integral<P>(pdf: &P, it: usize, ip: usize, bins: Bins) -> Result<f64>
where
    P: Fn(Direction) -> Result<f64>,
{
    let dmu = 1.0 / bins.theta as f64;
    let dphi = 2.0 * PI / bins.phi as f64;
    let mu0 = it as f64 * dmu;
    let k = if mu0 < GRAZING_COS { SUBDIVISIONS * GRAZING_REFINE } else { SUBDIVISIONS };
    let h_mu = dmu / k as f64;
    let h_phi = dphi / k as f64;
    let mut sum = 0.0;
    for a in 0..k {
        let mu = mu0 + (a as f64 + 0.5) * h_mu;
        for b in 0..k {
            let phi = ip as f64 * dphi + (b as f64 + 0.5) * h_phi;
            sum += pdf(Direction::from_cos_theta(mu, phi))?;
        }
    }
    Ok(sum * h_mu * h_phi)
}

/// Pearson statistic with cells below [`MIN_EXPECTED`] merged into one pool.
/// Returns the statistic and the number of cells it was computed over.
fn pearson(observed: &[u64], expected: &[f64]) -> (f64, usize) {
    let mut order: Vec<usize> = (0..expected.len()).collect();
    order.sort_by(|&a, &b| expected[a].total_cmp(&expected[b]));

    let mut stat = 0.0;
    let mut used = 0;
    let (mut pool_obs, mut pool_exp) = (0.0, 0.0);
    for k in order {
        let (o, e) = (observed[k] as f64, expected[k]);
        if e <= 0.0 {
            if o > 0.0 {
                // Samples where the density claims there can be none.
                return (f64::INFINITY, used + 1);
            }
            continue;
        }
        if e < MIN_EXPECTED {
            pool_obs += o;
            pool_exp += e;
        } else {
            stat += (o - e) * (o - e) / e;
            used += 1;
        }
    }
    if pool_exp > 0.0 {
        stat += (pool_obs - pool_exp) * (pool_obs - pool_exp) / pool_exp;
        used += 1;
    }
    (stat, used)
}
