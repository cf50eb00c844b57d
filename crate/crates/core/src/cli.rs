//! Command-line front end. Dispatch is single-threaded; the validation and
//! render calls it makes parallelize internally.

use std::ffi::OsString;
use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::atomic::write_atomic;
use crate::bench::{run_benchmarks, BenchConfig, BenchKind};
use crate::brdf::{AlbedoFlavor, FonRoughness, Material, Model, QonRoughness, QonVariant};
use crate::error::{Error, Result};
use crate::math::{Direction, Vec3};
use crate::render::{
    classify_pixels, furnace_metric, render, write_image, Camera, ImageFormat, RenderSettings, Scene,
};
use crate::sampling::Strategy;
use crate::spectrum::Spectrum;
use crate::validation::{
    albedo_curve, chi2_sampler_test, linspace, stats_curve, write_albedo_csv, write_stats_csv, AzimuthRule, Bins,
    QuadratureSpec,
};

pub const THREADS_ENV: &str = "EON_THREADS";

#[derive(Debug, Parser)]
#[command(name = "eon", version, about = "Energy-preserving Oren-Nayar BRDF tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the BRDF for one pair of directions.
    Eval(EvalArgs),
    /// Analytic and quadrature directional albedo over a mu grid, as CSV.
    Albedo(AlbedoArgs),
    /// Sampler weight statistics against view angle, as CSV.
    Stats(StatsArgs),
    /// Chi-square test of the EON sampler.
    Chi2(Chi2Args),
    /// Render a sphere in a white furnace and report its contrast.
    Furnace(FurnaceArgs),
    /// Time BRDF evaluation and sampling.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelId {
    Lambert,
    Qon,
    QonFootnote,
    Fon,
    Eon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerId {
    Cosine,
    Uniform,
    Cltc,
    CltcMis,
}

impl From<SamplerId> for Strategy {
    fn from(s: SamplerId) -> Self {
        match s {
            SamplerId::Cosine => Strategy::Cosine,
            SamplerId::Uniform => Strategy::Uniform,
            SamplerId::Cltc => Strategy::Cltc,
            SamplerId::CltcMis => Strategy::CltcMis,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MaterialArgs {
    #[arg(long, value_enum, default_value = "eon")]
    pub model: ModelId,
    /// Albedo per channel, each in [0, 1].
    #[arg(long, num_args = 3, value_names = ["R", "G", "B"], default_values_t = [1.0, 1.0, 1.0], allow_negative_numbers = true)]
    pub rho: Vec<f64>,
    /// QON roughness in radians, [0, pi/2]. Default pi/2.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// FON/EON roughness in [0, 1]. Default 1.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Exact FON albedo inside EON (default).
    #[arg(long, conflicts_with = "approx")]
    pub exact: bool,
    /// Fitted FON albedo inside EON.
    #[arg(long)]
    pub approx: bool,
}

impl MaterialArgs {
    pub fn model(&self) -> Result<Model> {
        let qon = matches!(self.model, ModelId::Qon | ModelId::QonFootnote);
        if qon && self.r.is_some() {
            return Err(Error::InvalidParameter("--r does not apply to qon; use --sigma".into()));
        }
        if !qon && self.sigma.is_some() {
            return Err(Error::InvalidParameter(format!("--sigma only applies to qon, not {:?}", self.model)));
        }
        let flavor = if self.approx { AlbedoFlavor::Approx } else { AlbedoFlavor::Exact };
        let sigma = || QonRoughness::new(self.sigma.unwrap_or(FRAC_PI_2));
        let r = || FonRoughness::new(self.r.unwrap_or(1.0));
        Ok(match self.model {
            ModelId::Lambert => {
                if self.r.is_some() {
                    return Err(Error::InvalidParameter("lambert takes no roughness".into()));
                }
                Model::Lambert
            }
            ModelId::Qon => Model::Qon { sigma: sigma()?, variant: QonVariant::Standard },
            ModelId::QonFootnote => Model::Qon { sigma: sigma()?, variant: QonVariant::Footnote },
            ModelId::Fon => Model::Fon { r: r()? },
            ModelId::Eon => Model::Eon { r: r()?, flavor },
        })
    }

    pub fn material(&self) -> Result<Material> {
        let rho = Spectrum::albedo(self.rho[0], self.rho[1], self.rho[2])?;
        Material::new(self.model()?, rho)
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub material: MaterialArgs,
    /// Incident direction in the shading frame (normalized on input).
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true, required_unless_present = "theta_i")]
    pub wi: Option<Vec<f64>>,
    /// Outgoing direction in the shading frame (normalized on input).
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true, required_unless_present = "mu")]
    pub wo: Option<Vec<f64>>,
    /// Incident polar angle in degrees (azimuth 0), instead of --wi.
    #[arg(long, conflicts_with = "wi", allow_negative_numbers = true)]
    pub theta_i: Option<f64>,
    /// Outgoing cosine in [0, 1] (azimuth 0), instead of --wo.
    #[arg(long, conflicts_with = "wo", allow_negative_numbers = true)]
    pub mu: Option<f64>,
}

#[derive(Debug, Args)]
pub struct AlbedoArgs {
    #[command(flatten)]
    pub material: MaterialArgs,
    /// Number of evenly spaced mu values in [0, 1].
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
    /// Gauss-Legendre nodes per zenith segment.
    #[arg(long, default_value_t = 64)]
    pub n_theta: usize,
    /// Azimuth nodes.
    #[arg(long, default_value_t = 128)]
    pub n_phi: usize,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Largest view angle in degrees, below 90.
    #[arg(long, default_value_t = 88.0, allow_negative_numbers = true)]
    pub theta_max: f64,
    /// Number of evenly spaced view angles in [0, theta_max].
    #[arg(long, default_value_t = 45)]
    pub theta_points: usize,
    /// Samples per (strategy, angle).
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Chi2Args {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Outgoing cosine in (0, 1].
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub theta_bins: usize,
    #[arg(long, default_value_t = 64)]
    pub phi_bins: usize,
    /// Significance level.
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
}

#[derive(Debug, Args)]
pub struct FurnaceArgs {
    #[command(flatten)]
    pub material: MaterialArgs,
    #[arg(long, value_enum, default_value = "cltc-mis")]
    pub sampler: SamplerId,
    #[arg(long, default_value_t = 256)]
    pub spp: u32,
    #[arg(long, default_value_t = 50)]
    pub bounces: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Image width and height in pixels.
    #[arg(long, default_value_t = 64)]
    pub size: usize,
    /// Output PPM image.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Benchmarks to run; all when absent.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Operations per repetition.
    #[arg(long, default_value_t = 200_000)]
    pub n: usize,
    #[arg(long, default_value_t = 9)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Formats with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..9).contains(&exp) {
        format!("{:.*}", (8 - exp).max(0) as usize, x)
    } else {
        format!("{x:.8e}")
    }
}

fn direction_arg(v: &[f64], name: &str) -> Result<Direction> {
    let d = Direction::normalize(Vec3::new(v[0], v[1], v[2]))
        .map_err(|_| Error::InvalidParameter(format!("--{name} must be a non-zero finite vector")))?;
    if d.z() < 0.0 {
        return Err(Error::BelowHorizon { which: if name == "wi" { "incident" } else { "outgoing" }, z: d.z() });
    }
    Ok(d)
}

fn unit_interval(x: f64, err: impl Fn(f64) -> Error) -> Result<f64> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(err(x))
    }
}

/// Writes to `path` atomically, or to `out` when no path is given.
fn emit(path: Option<&Path>, out: &mut dyn Write, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, write),
        None => write(out),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Eval(a) => {
            let m = a.material.material()?;
            let wi = match (&a.wi, a.theta_i) {
                (Some(v), _) => direction_arg(v, "wi")?,
                (None, Some(t)) => {
                    if !(0.0..=90.0).contains(&t) {
                        return Err(Error::InvalidParameter(format!("--theta-i {t} out of [0, 90]")));
                    }
                    Direction::from_spherical(t.to_radians(), 0.0)
                }
                (None, None) => unreachable!("clap requires --wi or --theta-i"),
            };
            let wo = match (&a.wo, a.mu) {
                (Some(v), _) => direction_arg(v, "wo")?,
                (None, Some(mu)) => Direction::from_cos_theta(unit_interval(mu, Error::CosineOutOfRange)?, 0.0),
                (None, None) => unreachable!("clap requires --wo or --mu"),
            };
            let f = m.eval(wi, wo)?;
            writeln!(out, "{} {} {}", sig9(f.r), sig9(f.g), sig9(f.b))?;
        }
        Command::Albedo(a) => {
            let m = a.material.material()?;
            if a.grid == 0 {
                return Err(Error::InvalidParameter("--grid must be >= 1".into()));
            }
            let spec = QuadratureSpec::new(a.n_theta, a.n_phi, AzimuthRule::SplitGauss)?;
            let rows = albedo_curve(&m, a.grid, spec)?;
            emit(a.out.as_deref(), out, |w| write_albedo_csv(w, &rows))?;
        }
        Command::Stats(a) => {
            let r = FonRoughness::new(a.r)?;
            if !(0.0..90.0).contains(&a.theta_max) {
                return Err(Error::InvalidParameter(format!("--theta-max {} out of [0, 90)", a.theta_max)));
            }
            if a.theta_points == 0 {
                return Err(Error::InvalidParameter("--theta-points must be >= 1".into()));
            }
            let thetas = linspace(0.0, a.theta_max, a.theta_points);
            let rows = stats_curve(&Strategy::REPORTED, r, &thetas, a.n, a.seed)?;
            emit(a.out.as_deref(), out, |w| write_stats_csv(w, &rows))?;
        }
        Command::Chi2(a) => {
            let r = FonRoughness::new(a.r)?;
            if !(a.mu > 0.0 && a.mu <= 1.0) {
                return Err(Error::CosineOutOfRange(a.mu));
            }
            if !(a.alpha > 0.0 && a.alpha < 1.0) {
                return Err(Error::InvalidParameter(format!("--alpha {} out of (0, 1)", a.alpha)));
            }
            let report = chi2_sampler_test(r, a.mu, a.n, Bins { theta: a.theta_bins, phi: a.phi_bins }, a.seed)?;
            writeln!(
                out,
                "statistic={} dof={} p={} invalid={} {}",
                sig9(report.statistic),
                report.dof,
                sig9(report.p_value),
                report.invalid,
                if report.passes(a.alpha) { "PASS" } else { "FAIL" }
            )?;
        }
        Command::Furnace(a) => {
            let m = a.material.material()?;
            if a.size < 8 {
                return Err(Error::InvalidParameter("--size must be >= 8".into()));
            }
            let scene = Scene::furnace(m, a.sampler.into())?;
            let camera = Camera::default();
            let settings =
                RenderSettings { width: a.size, height: a.size, spp: a.spp, bounces: a.bounces, seed: a.seed };
            let image = render(&scene, &camera, settings)?;
            let metric = furnace_metric(&image, &classify_pixels(&scene, &camera, a.size, a.size))?;
            if let Some(path) = &a.out {
                write_image(&image, path, ImageFormat::Ppm)?;
            }
            writeln!(
                out,
                "sphere_mean={} background_mean={} deviation={} mean_abs_deviation={}",
                sig9(metric.sphere_mean),
                sig9(metric.background_mean),
                sig9(metric.deviation),
                sig9(metric.mean_abs_deviation)
            )?;
        }
        Command::Bench(a) => {
            let kinds = if a.only.is_empty() {
                BenchKind::ALL.to_vec()
            } else {
                a.only.iter().map(|s| s.parse()).collect::<Result<Vec<BenchKind>>>()?
            };
            let config = BenchConfig { n: a.n, repetitions: a.repetitions, seed: a.seed };
            writeln!(out, "{:<16} {:>10}", "benchmark", "ns/op")?;
            for r in run_benchmarks(&kinds, config)? {
                writeln!(out, "{:<16} {:>10.2}", r.kind.name(), r.median_ns)?;
            }
        }
    }
    Ok(())
}

/// Worker count from [`THREADS_ENV`]; `0` or unset means automatic.
pub fn threads_from_env(value: Option<&str>) -> Result<usize> {
    match value {
        None => Ok(0),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV}={v:?} is not a thread count"))),
    }
}

/// Parses `args`, configures the worker pool and runs. Errors print a single
/// line to stderr.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    let setup = threads_from_env(std::env::var(THREADS_ENV).ok().as_deref()).and_then(|n| {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::InvalidParameter(e.to_string()))
    });
    if let Err(e) = setup {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
