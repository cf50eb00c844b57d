//! Acceptance gate: runs the twelve criteria in order, prints one PASS/FAIL
//! line for each and exits non-zero if any fails.

use std::f64::consts::{FRAC_1_PI, FRAC_PI_2};
use std::process::ExitCode;
use std::time::Instant;

use eon::bench::{run_benchmarks, BenchConfig, BenchKind};
use eon::brdf::{
    eon_directional_albedo, fon_albedo_approx, fon_albedo_exact, fon_average_albedo, qon_average_albedo,
    qon_directional_albedo,
};
use eon::render::{classify_pixels, furnace_metric, render, Camera, RenderSettings, Scene};
use eon::sampling::{cltc_sample, pdf_eon, sample_eon, Strategy};
use eon::validation::{
    albedo_numeric, average_albedo_numeric, chi2_sampler_test, integrate_pdf, linspace, weight_stats, Bins,
    QuadratureSpec, SampleStream,
};
use eon::{AlbedoFlavor, Direction, FonRoughness, Material, Model, QonRoughness, QonVariant, Spectrum};

// Tolerances.
const ANALYTIC_FURNACE_TOL: f64 = 1e-6;
const QUADRATURE_FURNACE_TOL: f64 = 2e-3;
const FIT_TOL: f64 = 1e-3;
const ORACLE_TOL: f64 = 1e-3;
const FON_AVERAGE_RANGE: (f64, f64) = (0.80, 0.86);
const PDF_NORM_TOL: f64 = 1e-3;
const CHI2_SAMPLES: u64 = 1_000_000;
const CHI2_ALPHA: f64 = 0.01;
const CHI2_MIN_PASSES: usize = 23;
const CONFINEMENT_SAMPLES: u64 = 1_000_000;
const VARIANCE_SAMPLES: u64 = 1_000_000;
const GRAZING_RATIO_MIN: f64 = 10.0;
const NORMAL_RATIO_MAX: f64 = 1.5;
const UNBIASED_SAMPLES: u64 = 1_000_000;
const UNBIASED_SIGMAS: f64 = 3.0;
/// Standard errors below this fraction of the mean are rounding noise.
const SE_FLOOR: f64 = 1e-12;
const FURNACE_SPP: u32 = 256;
const FURNACE_BOUNCES: u32 = 50;
const FURNACE_SIZE: usize = 64;
const EON_FURNACE_MAX: f64 = 0.01;
const QON_FURNACE_MIN: f64 = 0.20;
const EXACT_OVER_APPROX_MIN: f64 = 2.0;
const CLTC_OVER_COSINE_MAX: f64 = 4.0;
/// FON and QON evaluation costs count as comparable within this factor.
const COMPARABLE_FACTOR: f64 = 2.0;
const PROPERTY_CASES: usize = 10_000;
const RECIPROCITY_TOL: f64 = 1e-12;
const LAMBERT_LIMIT_TOL: f64 = 1e-12;
const SELF_CONSISTENCY_TOL: f64 = 1e-9;

/// `(mu, r)` grid for the sampler criteria, including a near-grazing view.
const SAMPLER_MUS: [f64; 5] = [0.02, 0.25, 0.5, 0.75, 1.0];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r_of(x: f64) -> FonRoughness {
    FonRoughness::new(x).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn grid11() -> impl Iterator<Item = (FonRoughness, f64)> {
    linspace(0.0, 1.0, 11).into_iter().flat_map(|r| linspace(0.0, 1.0, 11).into_iter().map(move |mu| (r_of(r), mu)))
}

fn energy_analytic() -> Outcome {
    let worst = grid11()
        .map(|(r, mu)| {
            let e = eon_directional_albedo(Spectrum::ONE, r, Direction::from_cos_theta(mu, 0.0), AlbedoFlavor::Exact)
                .unwrap();
            (e.r - 1.0).abs()
        })
        .fold(0.0, f64::max);
    check(worst < ANALYTIC_FURNACE_TOL, format!("max |E - 1| = {worst:.2e}"))
}

fn energy_quadrature() -> Outcome {
    let spec = QuadratureSpec::default();
    let worst = grid11()
        .map(|(r, mu)| {
            let m = Material::new(Model::Eon { r, flavor: AlbedoFlavor::Exact }, Spectrum::ONE).unwrap();
            (albedo_numeric(&m, Direction::from_cos_theta(mu, 0.0), spec).unwrap().r - 1.0).abs()
        })
        .fold(0.0, f64::max);
    check(worst < QUADRATURE_FURNACE_TOL, format!("max |integral - 1| = {worst:.2e}"))
}

fn albedo_fit() -> Outcome {
    let mut worst = 0.0f64;
    for r in linspace(0.0, 1.0, 201) {
        for mu in linspace(0.0, 1.0, 401) {
            let e = fon_albedo_exact(mu, r_of(r)).unwrap();
            worst = worst.max(rel(fon_albedo_approx(mu, r_of(r)).unwrap(), e));
        }
    }
    check(worst < FIT_TOL, format!("max relative error {worst:.2e}"))
}

fn albedo_oracles() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst = (0.0f64, String::new());
    let mut note = |e: f64, what: String| {
        if e > worst.0 {
            worst = (e, what);
        }
    };
    for t in linspace(0.0, 1.0, 9) {
        let sigma = QonRoughness::new(t * FRAC_PI_2).unwrap();
        let r = r_of(t);
        let qon = Material::new(Model::Qon { sigma, variant: QonVariant::Standard }, Spectrum::ONE).unwrap();
        let fon = Material::new(Model::Fon { r }, Spectrum::ONE).unwrap();
        for mu in linspace(0.0, 1.0, 9) {
            let wo = Direction::from_cos_theta(mu, 0.0);
            let q = qon_directional_albedo(sigma, QonVariant::Standard, mu).unwrap();
            note(rel(albedo_numeric(&qon, wo, spec).unwrap().r, q), format!("qon t={t} mu={mu}"));
            let f = fon_albedo_exact(mu, r).unwrap();
            note(rel(albedo_numeric(&fon, wo, spec).unwrap().r, f), format!("fon t={t} mu={mu}"));
        }
        let q = qon_average_albedo(sigma, QonVariant::Standard);
        note(rel(average_albedo_numeric(&qon, spec).unwrap().r, q), format!("qon average t={t}"));
        let f = fon_average_albedo(r);
        note(rel(average_albedo_numeric(&fon, spec).unwrap().r, f), format!("fon average t={t}"));
    }
    check(worst.0 < ORACLE_TOL, format!("max relative gap {:.2e} ({})", worst.0, worst.1))
}

fn fon_energy_loss() -> Outcome {
    let a = fon_average_albedo(FonRoughness::ONE);
    check((FON_AVERAGE_RANGE.0..=FON_AVERAGE_RANGE.1).contains(&a), format!("average albedo at r=1 is {a:.6}"))
}

fn sampler_correctness() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut worst_norm = 0.0f64;
    let mut passes = 0;
    let mut failed = Vec::new();
    for (i, mu) in SAMPLER_MUS.into_iter().enumerate() {
        for (j, r) in linspace(0.0, 1.0, 5).into_iter().enumerate() {
            let r = r_of(r);
            let wo = Direction::from_cos_theta(mu, 0.0);
            let norm = integrate_pdf(spec, wo, |wi| pdf_eon(wo, wi, r)).unwrap();
            worst_norm = worst_norm.max((norm - 1.0).abs());
            let seed = 1000 + (5 * i + j) as u64;
            let report = chi2_sampler_test(r, mu, CHI2_SAMPLES, Bins::default(), seed).unwrap();
            if report.passes(CHI2_ALPHA) {
                passes += 1;
            } else {
                failed.push(format!("(mu={mu}, r={}, p={:.3e})", r.value(), report.p_value));
            }
        }
    }
    check(
        worst_norm < PDF_NORM_TOL && passes >= CHI2_MIN_PASSES,
        format!("max |integral pdf - 1| = {worst_norm:.2e}; chi2 passes {passes}/25 {}", failed.join(" ")),
    )
}

fn confinement() -> Outcome {
    let mut below = 0u64;
    for (i, mu) in SAMPLER_MUS.into_iter().enumerate() {
        for (j, r) in linspace(0.0, 1.0, 5).into_iter().enumerate() {
            let wo = Direction::from_cos_theta(mu, 0.0);
            let mut stream = SampleStream::new(77, (5 * i + j) as u64);
            for _ in 0..CONFINEMENT_SAMPLES {
                if cltc_sample(wo, r_of(r), stream.next_pair()).unwrap().wi.z() < 0.0 {
                    below += 1;
                }
            }
        }
    }
    check(below == 0, format!("{below} below-horizon samples in 25 x {CONFINEMENT_SAMPLES}"))
}

fn variance_reduction() -> Outcome {
    let r = FonRoughness::ONE;
    let stats = |s, mu| weight_stats(s, r, mu, VARIANCE_SAMPLES, 8, AlbedoFlavor::Exact).unwrap();
    let grazing = 88f64.to_radians().cos();
    let ratio = stats(Strategy::Cosine, grazing).variance / stats(Strategy::CltcMis, grazing).variance;
    let normal = stats(Strategy::CltcMis, 1.0).variance / stats(Strategy::Cosine, 1.0).variance;
    check(
        ratio >= GRAZING_RATIO_MIN && normal <= NORMAL_RATIO_MAX,
        format!("cosine/MIS variance at 88 deg = {ratio:.1}; MIS/cosine at normal = {normal:.3}"),
    )
}

fn unbiasedness() -> Outcome {
    let mut worst = (0.0f64, String::new());
    for (i, mu) in SAMPLER_MUS.into_iter().enumerate() {
        for (j, r) in linspace(0.0, 1.0, 5).into_iter().enumerate() {
            let r = r_of(r);
            let s = weight_stats(Strategy::CltcMis, r, mu, UNBIASED_SAMPLES, 300 + (5 * i + j) as u64, AlbedoFlavor::Exact)
                .unwrap();
            let e = eon_directional_albedo(Spectrum::ONE, r, Direction::from_cos_theta(mu, 0.0), AlbedoFlavor::Exact)
                .unwrap()
                .r;
            let z = (s.mean - e).abs() / s.standard_error().max(SE_FLOOR * e);
            if z.is_nan() || z > worst.0 {
                worst = (z, format!("mu={mu} r={} mean={:.15} E={e:.15} se={:.2e}", r.value(), s.mean, s.standard_error()));
            }
        }
    }
    check(worst.0 < UNBIASED_SIGMAS, format!("max |mean - E| = {:.2} standard errors ({})", worst.0, worst.1))
}

fn furnace_render() -> Outcome {
    let camera = Camera::default();
    let settings =
        RenderSettings { width: FURNACE_SIZE, height: FURNACE_SIZE, spp: FURNACE_SPP, bounces: FURNACE_BOUNCES, seed: 2024 };
    let deviation = |m: Model, sampler| {
        let scene = Scene::furnace(Material::new(m, Spectrum::ONE).unwrap(), sampler).unwrap();
        let image = render(&scene, &camera, settings).unwrap();
        furnace_metric(&image, &classify_pixels(&scene, &camera, FURNACE_SIZE, FURNACE_SIZE)).unwrap().deviation
    };
    let eon = deviation(Model::Eon { r: FonRoughness::ONE, flavor: AlbedoFlavor::Exact }, Strategy::CltcMis);
    let sigma = QonRoughness::new(FRAC_PI_2).unwrap();
    let qon = deviation(Model::Qon { sigma, variant: QonVariant::Standard }, Strategy::Cosine);
    check(
        eon < EON_FURNACE_MAX && qon > QON_FURNACE_MIN,
        format!("EON deviation {:.3}%, QON deviation {:.1}%", 100.0 * eon, 100.0 * qon),
    )
}

fn benchmark_orderings() -> Outcome {
    let results = run_benchmarks(&BenchKind::ALL, BenchConfig::default()).unwrap();
    let t = |k: BenchKind| results.iter().find(|r| r.kind == k).unwrap().median_ns;
    let (lambert, qon, fon) = (t(BenchKind::EvalLambert), t(BenchKind::EvalQon), t(BenchKind::EvalFon));
    let (approx, exact) = (t(BenchKind::EvalEonApprox), t(BenchKind::EvalEonExact));
    let (cosine, cltc) = (t(BenchKind::SampleCosine), t(BenchKind::SampleCltc));
    let comparable = fon.max(qon) / fon.min(qon) <= COMPARABLE_FACTOR;
    let ordered = lambert < fon.min(qon) && fon.max(qon) < approx && approx < exact;
    let ok = comparable
        && ordered
        && exact / approx >= EXACT_OVER_APPROX_MIN
        && cltc / cosine <= CLTC_OVER_COSINE_MAX;
    check(
        ok,
        format!(
            "ns/op lambert {lambert:.1}, qon {qon:.1}, fon {fon:.1}, eon-approx {approx:.1}, eon-exact {exact:.1}; \
             exact/approx {:.2}; cltc/cosine sampling {:.2}",
            exact / approx,
            cltc / cosine
        ),
    )
}

fn random_model(s: &mut SampleStream) -> Model {
    let t = s.next_f64();
    match (4.0 * s.next_f64()) as u32 {
        0 => Model::Lambert,
        1 => Model::Qon {
            sigma: QonRoughness::new(t * FRAC_PI_2).unwrap(),
            variant: if s.next_f64() < 0.5 { QonVariant::Standard } else { QonVariant::Footnote },
        },
        2 => Model::Fon { r: r_of(t) },
        _ => Model::Eon {
            r: r_of(t),
            flavor: if s.next_f64() < 0.5 { AlbedoFlavor::Exact } else { AlbedoFlavor::Approx },
        },
    }
}

fn zero_roughness(m: Model) -> Model {
    match m {
        Model::Lambert => Model::Lambert,
        Model::Qon { variant, .. } => Model::Qon { sigma: QonRoughness::new(0.0).unwrap(), variant },
        Model::Fon { .. } => Model::Fon { r: FonRoughness::ZERO },
        Model::Eon { flavor, .. } => Model::Eon { r: FonRoughness::ZERO, flavor },
    }
}

fn property_suites() -> Outcome {
    let mut s = SampleStream::new(12, 0);
    let dir = |s: &mut SampleStream| Direction::from_cos_theta(s.next_f64(), 2.0 * std::f64::consts::PI * s.next_f64());
    let (mut recip, mut negative, mut lambert, mut weight, mut consistency) = (0.0f64, 0, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..PROPERTY_CASES {
        let m = random_model(&mut s);
        let rho = Spectrum::new(s.next_f64(), s.next_f64(), s.next_f64());
        let (wi, wo) = (dir(&mut s), dir(&mut s));
        let mat = Material::new(m, rho).unwrap();
        let (a, b) = (mat.eval(wi, wo).unwrap(), mat.eval(wo, wi).unwrap());
        recip = recip.max((a.r - b.r).abs()).max((a.g - b.g).abs()).max((a.b - b.b).abs());
        if a.min_channel().is_nan() || a.min_channel() < 0.0 {
            negative += 1;
        }
        let flat = Material::new(zero_roughness(m), rho).unwrap().eval(wi, wo).unwrap();
        lambert = lambert.max((flat.r - rho.r * FRAC_1_PI).abs()).max((flat.b - rho.b * FRAC_1_PI).abs());

        if wo.z() > 0.0 {
            let u = s.next_pair();
            let z = sample_eon(wo, FonRoughness::ZERO, u).unwrap();
            if z.wi.z() > 0.0 {
                let f = Material::new(Model::Eon { r: FonRoughness::ZERO, flavor: AlbedoFlavor::Exact }, Spectrum::ONE)
                    .unwrap()
                    .eval(z.wi, wo)
                    .unwrap();
                weight = weight.max((f.r * z.wi.z() / z.pdf - 1.0).abs());
            }
            let r = r_of(s.next_f64());
            let d = sample_eon(wo, r, u).unwrap();
            consistency = consistency.max(rel(pdf_eon(wo, d.wi, r).unwrap(), d.pdf));
        }
    }
    check(
        recip <= RECIPROCITY_TOL
            && negative == 0
            && lambert <= LAMBERT_LIMIT_TOL
            && weight <= 1e-12
            && consistency <= SELF_CONSISTENCY_TOL,
        format!(
            "reciprocity {recip:.1e}, negatives {negative}, lambert limit {lambert:.1e}, \
             r=0 weight {weight:.1e}, sample/pdf {consistency:.1e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("energy preservation, analytic", energy_analytic),
        ("energy preservation, quadrature", energy_quadrature),
        ("albedo fit accuracy", albedo_fit),
        ("analytic albedos vs quadrature", albedo_oracles),
        ("FON energy loss", fon_energy_loss),
        ("sampler correctness", sampler_correctness),
        ("hemisphere confinement", confinement),
        ("variance reduction", variance_reduction),
        ("estimator unbiasedness", unbiasedness),
        ("furnace render", furnace_render),
        ("benchmark orderings", benchmark_orderings),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag}: {name}: {detail} [{secs:.1}s]", i + 1);
        failures += usize::from(outcome.is_err());
    }
    println!("acceptance: {}/12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
