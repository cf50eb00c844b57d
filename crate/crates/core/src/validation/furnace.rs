use super::stats::sharded;
use crate::brdf::Material;
use crate::error::{Error, Result};
use crate::sampling::{cosine_hemisphere, Strategy};

/// White-furnace estimate for a single shading point under unit uniform
/// illumination.
///
/// Camera directions are drawn cosine-weighted, which is the distribution of
/// view directions over the visible area of any convex object seen from far
/// away, so the expected value equals the average albedo. An isolated point
/// sees only the environment after reflecting, so paths end at their first
/// bounce; `bounces` must be at least 1.
pub fn furnace_test(material: &Material, strategy: Strategy, bounces: u32, spp: u64, seed: u64) -> Result<f64> {
    if bounces == 0 {
        return Err(Error::InvalidParameter("furnace test needs at least one bounce".into()));
    }
    if spp == 0 {
        return Err(Error::InvalidParameter("furnace test needs spp >= 1".into()));
    }
    let lobe_r = strategy.roughness_for(&material.model)?;
    let acc = sharded(spp, seed, |stream, count, acc| {
        for _ in 0..count {
            let wo = cosine_hemisphere(stream.next_pair());
            if wo.z() <= 0.0 {
                acc.push(0.0);
                continue;
            }
            let radiance = match strategy.sample(wo, lobe_r, stream.next_pair())? {
                Some(s) if s.pdf > 0.0 => (material.eval(s.wi, wo)? * (s.wi.z() / s.pdf)).average(),
                _ => 0.0,
            };
            acc.push(radiance);
        }
        Ok(())
    })?;
    Ok(acc.stats().mean)
}
