//! Micro-benchmarks of BRDF evaluation and sampling.
//!
//! Inputs (roughness, albedo, directions, variates) are drawn up front from a
//! seeded stream into a pool small enough to stay in cache, which is cycled
//! until `n` operations have run. Repetitions interleave the benchmarks so
//! clock drift affects all of them alike; the report is the median ns/op over
//! repetitions after a warmup pass. Results feed an accumulator passed
//! through [`black_box`] so no call can be elided.

use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use crate::brdf::{AlbedoFlavor, FonRoughness, Material, Model, QonRoughness, QonVariant};
use crate::error::{Error, Result};
use crate::math::Direction;
use crate::sampling::{cosine_hemisphere, sample_eon, RandomPair};
use crate::spectrum::Spectrum;
use crate::validation::SampleStream;

pub const MIN_REPETITIONS: usize = 5;

/// Distinct inputs per benchmark.
pub const INPUT_POOL: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchKind {
    EvalLambert,
    EvalQon,
    EvalFon,
    EvalEonApprox,
    EvalEonExact,
    /// Cosine sampling plus EON (approx) evaluation of the weight.
    SampleCosine,
    /// CLTC+MIS sampling plus EON (approx) evaluation of the weight.
    SampleCltc,
}

impl BenchKind {
    pub const ALL: [BenchKind; 7] = [
        BenchKind::EvalLambert,
        BenchKind::EvalQon,
        BenchKind::EvalFon,
        BenchKind::EvalEonApprox,
        BenchKind::EvalEonExact,
        BenchKind::SampleCosine,
        BenchKind::SampleCltc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchKind::EvalLambert => "eval-lambert",
            BenchKind::EvalQon => "eval-qon",
            BenchKind::EvalFon => "eval-fon",
            BenchKind::EvalEonApprox => "eval-eon-approx",
            BenchKind::EvalEonExact => "eval-eon-exact",
            BenchKind::SampleCosine => "sample-cosine",
            BenchKind::SampleCltc => "sample-cltc",
        }
    }
}

impl fmt::Display for BenchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown benchmark '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    /// Operations per repetition.
    pub n: usize,
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { n: 200_000, repetitions: 9, seed: 1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub kind: BenchKind,
    pub median_ns: f64,
    /// ns/op of every timed repetition, in run order.
    pub runs_ns: Vec<f64>,
}

struct Input {
    material: Material,
    wi: Direction,
    wo: Direction,
    u: RandomPair,
}

fn inputs(kind: BenchKind, n: usize, seed: u64) -> Result<Vec<Input>> {
    let mut s = SampleStream::new(seed, 0);
    (0..n)
        .map(|_| {
            let rho = Spectrum::new(s.next_f64(), s.next_f64(), s.next_f64());
            let t = s.next_f64();
            let model = match kind {
                BenchKind::EvalLambert => Model::Lambert,
                BenchKind::EvalQon => Model::Qon {
                    sigma: QonRoughness::new(t * std::f64::consts::FRAC_PI_2)?,
                    variant: QonVariant::Standard,
                },
                BenchKind::EvalFon => Model::Fon { r: FonRoughness::new(t)? },
                BenchKind::EvalEonExact => Model::Eon { r: FonRoughness::new(t)?, flavor: AlbedoFlavor::Exact },
                _ => Model::Eon { r: FonRoughness::new(t)?, flavor: AlbedoFlavor::Approx },
            };
            // Keep wo off the horizon so the samplers accept it.
            let wo = Direction::from_cos_theta(0.01 + 0.99 * s.next_f64(), 2.0 * std::f64::consts::PI * s.next_f64());
            let wi = cosine_hemisphere(s.next_pair());
            Ok(Input { material: Material::new(model, rho)?, wi, wo, u: s.next_pair() })
        })
        .collect()
}

/// Runs `n` operations, cycling through `inputs`.
fn pass(kind: BenchKind, inputs: &[Input], n: usize) -> Result<f64> {
    let mut acc = 0.0;
    for input in inputs.iter().cycle().take(n) {
        let input = black_box(input);
        let m = &input.material;
        acc += match kind {
            BenchKind::SampleCosine => {
                let wi = cosine_hemisphere(input.u);
                let pdf = wi.z() * std::f64::consts::FRAC_1_PI;
                (m.eval(wi, input.wo)? * (wi.z() / pdf)).r
            }
            BenchKind::SampleCltc => {
                let r = m.model.lobe_roughness().unwrap_or(FonRoughness::ZERO);
                let s = sample_eon(input.wo, r, input.u)?;
                (m.eval(s.wi, input.wo)? * (s.wi.z() / s.pdf)).r
            }
            _ => m.eval(input.wi, input.wo)?.r,
        };
    }
    Ok(black_box(acc))
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let k = s.len() / 2;
    if s.len() % 2 == 1 {
        s[k]
    } else {
        0.5 * (s[k - 1] + s[k])
    }
}

/// Times every kind in `kinds`. Single-threaded by construction.
pub fn run_benchmarks(kinds: &[BenchKind], config: BenchConfig) -> Result<Vec<BenchResult>> {
    if config.repetitions < MIN_REPETITIONS {
        return Err(Error::InvalidParameter(format!("benchmarks need >= {MIN_REPETITIONS} repetitions")));
    }
    if config.n == 0 {
        return Err(Error::InvalidParameter("benchmarks need n >= 1".into()));
    }
    let data = kinds
        .iter()
        .map(|&k| inputs(k, config.n.min(INPUT_POOL), config.seed))
        .collect::<Result<Vec<_>>>()?;
    for (&k, d) in kinds.iter().zip(&data) {
        pass(k, d, config.n)?;
    }
    let mut runs_ns = vec![Vec::with_capacity(config.repetitions); kinds.len()];
    for _ in 0..config.repetitions {
        for (i, (&k, d)) in kinds.iter().zip(&data).enumerate() {
            let start = Instant::now();
            pass(k, d, config.n)?;
            runs_ns[i].push(start.elapsed().as_nanos() as f64 / config.n as f64);
        }
    }
    Ok(kinds
        .iter()
        .zip(runs_ns)
        .map(|(&kind, runs_ns)| BenchResult { kind, median_ns: median(&runs_ns), runs_ns })
        .collect())
}

pub fn run_benchmark(kind: BenchKind, config: BenchConfig) -> Result<BenchResult> {
    Ok(run_benchmarks(&[kind], config)?.remove(0))
}
