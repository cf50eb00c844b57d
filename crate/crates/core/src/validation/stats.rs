use rayon::prelude::*;

use super::rng::SampleStream;
use crate::brdf::{eval_eon, AlbedoFlavor, FonRoughness};
use crate::error::{Error, Result};
use crate::math::Direction;
use crate::sampling::Strategy;
use crate::spectrum::Spectrum;

/// Number of independent RNG streams a sample loop is split into. Fixed, so
/// results do not depend on the worker count.
pub const SHARDS: u64 = 64;

/// Minimum draw count accepted by [`weight_stats`].
pub const MIN_WEIGHT_SAMPLES: u64 = 10_000;

/// Running mean/variance/max, combinable across shards (Chan et al.).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Accumulator {
    n: u64,
    mean: f64,
    m2: f64,
    max: f64,
}

impl Accumulator {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
        if self.n == 1 || x > self.max {
            self.max = x;
        }
    }

    pub fn merge(self, o: Accumulator) -> Accumulator {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let delta = o.mean - self.mean;
        Accumulator {
            n,
            mean: self.mean + delta * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + delta * delta * (self.n as f64 * o.n as f64) / n as f64,
            max: self.max.max(o.max),
        }
    }

    pub fn stats(&self) -> WeightStats {
        WeightStats {
            n: self.n,
            mean: self.mean,
            variance: if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 },
            max: self.max,
        }
    }
}

/// Statistics of the throughput weight `w = f cos(theta_i) / pdf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightStats {
    pub n: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub max: f64,
}

impl WeightStats {
    pub fn standard_error(&self) -> f64 {
        (self.variance / self.n as f64).sqrt()
    }
}

/// Runs `n` draws split over [`SHARDS`] streams derived from `seed` and
/// reduces them in shard order.
pub fn sharded<F>(n: u64, seed: u64, per_shard: F) -> Result<Accumulator>
where
    F: Fn(&mut SampleStream, u64, &mut Accumulator) -> Result<()> + Sync,
{
    let parts: Vec<Result<Accumulator>> = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = n / SHARDS + u64::from(shard < n % SHARDS);
            let mut stream = SampleStream::new(seed, shard);
            let mut acc = Accumulator::default();
            per_shard(&mut stream, count, &mut acc)?;
            Ok(acc)
        })
        .collect();
    parts.into_iter().try_fold(Accumulator::default(), |a, p| Ok(a.merge(p?)))
}

/// Throughput-weight statistics of `strategy` for white EON (`rho = 1`) at
/// roughness `r` and outgoing cosine `mu_o`.
pub fn weight_stats(
    strategy: Strategy,
    r: FonRoughness,
    mu_o: f64,
    n: u64,
    seed: u64,
    flavor: AlbedoFlavor,
) -> Result<WeightStats> {
    if n < MIN_WEIGHT_SAMPLES {
        return Err(Error::InvalidParameter(format!("weight statistics need n >= {MIN_WEIGHT_SAMPLES} (got {n})")));
    }
    if !(mu_o > 0.0 && mu_o <= 1.0) {
        return Err(Error::CosineOutOfRange(mu_o));
    }
    let wo = Direction::from_cos_theta(mu_o, 0.0);
    let acc = sharded(n, seed, |stream, count, acc| {
        for _ in 0..count {
            let w = match strategy.sample(wo, r, stream.next_pair())? {
                Some(s) if s.pdf > 0.0 => {
                    eval_eon(Spectrum::ONE, r, s.wi, wo, flavor)?.r * s.wi.z() / s.pdf
                }
                _ => 0.0,
            };
            acc.push(w);
        }
        Ok(())
    })?;
    Ok(acc.stats())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulator_matches_two_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 7919) % 1000) as f64 / 37.0).collect();
        let mut whole = Accumulator::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Accumulator::default();
        let mut b = Accumulator::default();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b).stats();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
        assert!((merged.mean - mean).abs() < 1e-12);
        assert!((merged.variance - var).abs() < 1e-9 * var);
        assert_eq!(merged.max, whole.stats().max);
        assert!((whole.stats().variance - var).abs() < 1e-9 * var);
    }

    #[test]
    fn lambert_limit_has_unit_weight() {
        let s = weight_stats(Strategy::Cosine, FonRoughness::ZERO, 0.6, 20_000, 1, AlbedoFlavor::Exact).unwrap();
        assert!((s.mean - 1.0).abs() < 1e-12);
        assert!(s.variance < 1e-20);
        assert!((s.max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_small_counts() {
        assert!(weight_stats(Strategy::Cosine, FonRoughness::ONE, 0.5, 10, 1, AlbedoFlavor::Exact).is_err());
        assert!(weight_stats(Strategy::Cosine, FonRoughness::ONE, 0.0, 20_000, 1, AlbedoFlavor::Exact).is_err());
    }
}
