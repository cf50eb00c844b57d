//! A small deterministic path tracer for a single analytic sphere under a
//! uniform environment and an optional directional light.
//!
//! Rows of the image are the parallel work units; row `y` draws from the
//! stream `(seed, y)`, so output does not depend on the worker count.

mod image;

use rayon::prelude::*;

pub use image::{decode_channel, decode_ppm, encode_channel, encode_ppm, write_image, Image, ImageFormat, GAMMA};

use crate::brdf::{FonRoughness, Material};
use crate::error::{Error, Result};
use crate::math::{Direction, Frame, Vec3};
use crate::sampling::Strategy;
use crate::spectrum::Spectrum;
use crate::validation::{Accumulator, SampleStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    center: Vec3,
    radius: f64,
}

impl Sphere {
    pub fn new(center: Vec3, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || !center.is_finite() {
            return Err(Error::InvalidParameter(format!("invalid sphere radius {radius}")));
        }
        Ok(Sphere { center, radius })
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Nearest hit distance beyond `t_min` along the unit direction `d`.
    fn intersect(&self, o: Vec3, d: Vec3, t_min: f64) -> Option<f64> {
        let oc = o - self.center;
        let b = oc.dot(d);
        let c = oc.dot(oc) - self.radius * self.radius;
        let disc = b * b - c;
        if disc < 0.0 {
            return None;
        }
        let sq = disc.sqrt();
        [-b - sq, -b + sq].into_iter().find(|&t| t > t_min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalLight {
    /// Direction towards the light.
    pub direction: Direction,
    pub radiance: Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Environment {
    /// Radiance arriving from every direction not blocked by the sphere.
    pub radiance: Spectrum,
    pub light: Option<DirectionalLight>,
}

impl Environment {
    pub fn uniform(radiance: Spectrum) -> Self {
        Environment { radiance, light: None }
    }

    pub fn directional(direction: Direction, radiance: Spectrum) -> Self {
        Environment { radiance: Spectrum::ZERO, light: Some(DirectionalLight { direction, radiance }) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scene {
    pub sphere: Sphere,
    pub material: Material,
    pub sampler: Strategy,
    pub environment: Environment,
}

impl Scene {
    pub fn new(sphere: Sphere, material: Material, sampler: Strategy, environment: Environment) -> Result<Self> {
        let mut radiances = vec![environment.radiance];
        radiances.extend(environment.light.map(|l| l.radiance));
        if radiances.iter().any(|r| !r.is_finite() || r.min_channel() < 0.0) {
            return Err(Error::InvalidParameter("radiance must be finite and >= 0".into()));
        }
        sampler.roughness_for(&material.model)?;
        Ok(Scene { sphere, material, sampler, environment })
    }

    /// Unit sphere at the origin under unit uniform illumination.
    pub fn furnace(material: Material, sampler: Strategy) -> Result<Self> {
        Scene::new(
            Sphere::new(Vec3::new(0.0, 0.0, 0.0), 1.0)?,
            material,
            sampler,
            Environment::uniform(Spectrum::ONE),
        )
    }
}

/// Pinhole camera.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    eye: Vec3,
    forward: Vec3,
    right: Vec3,
    up: Vec3,
    tan_half_fov: f64,
}

impl Camera {
    /// `fov_deg` is the vertical field of view.
    pub fn look_at(eye: Vec3, target: Vec3, up: Vec3, fov_deg: f64) -> Result<Self> {
        if !(fov_deg > 0.0 && fov_deg < 180.0) {
            return Err(Error::InvalidParameter(format!("field of view {fov_deg} out of (0, 180)")));
        }
        let forward = Direction::normalize(target - eye)?.vec();
        let right = Direction::normalize(forward.cross(up))?.vec();
        let up = right.cross(forward);
        Ok(Camera { eye, forward, right, up, tan_half_fov: (0.5 * fov_deg).to_radians().tan() })
    }

    /// Ray direction through image-plane point `(x, y)` in pixel units.
    fn ray(&self, x: f64, y: f64, width: usize, height: usize) -> Vec3 {
        let aspect = width as f64 / height as f64;
        let px = (2.0 * x / width as f64 - 1.0) * self.tan_half_fov * aspect;
        let py = (1.0 - 2.0 * y / height as f64) * self.tan_half_fov;
        (self.forward + self.right * px + self.up * py).normalized()
    }
}

impl Default for Camera {
    /// Looks at the unit sphere at the origin from `z = 4`, filling about
    /// three quarters of the frame height.
    fn default() -> Self {
        Camera::look_at(Vec3::new(0.0, 0.0, 4.0), Vec3::new(0.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), 40.0)
            .expect("valid default camera")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSettings {
    pub width: usize,
    pub height: usize,
    pub spp: u32,
    /// Maximum number of surface scattering events per path.
    pub bounces: u32,
    pub seed: u64,
}

impl RenderSettings {
    fn check(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidParameter("image must be at least 1x1".into()));
        }
        if self.spp == 0 {
            return Err(Error::InvalidParameter("spp must be >= 1".into()));
        }
        Ok(())
    }
}

/// Mean image plus the per-pixel sample variance of the channel-mean
/// radiance over the pixel's `spp` paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub image: Image,
    pub variance: Vec<f64>,
}

pub fn render(scene: &Scene, camera: &Camera, settings: RenderSettings) -> Result<Image> {
    render_with_variance(scene, camera, settings).map(|r| r.image)
}

pub fn render_with_variance(scene: &Scene, camera: &Camera, settings: RenderSettings) -> Result<Rendered> {
    settings.check()?;
    let lobe_r = scene.sampler.roughness_for(&scene.material.model)?;
    let (w, h) = (settings.width, settings.height);
    let rows: Vec<Result<Vec<(Spectrum, f64)>>> = (0..h)
        .into_par_iter()
        .map(|y| {
            let mut stream = SampleStream::new(settings.seed, y as u64);
            (0..w)
                .map(|x| {
                    let mut sum = Spectrum::ZERO;
                    let mut acc = Accumulator::default();
                    for _ in 0..settings.spp {
                        let jitter = stream.next_pair();
                        let d = camera.ray(x as f64 + jitter.u1, y as f64 + jitter.u2, w, h);
                        let l = trace(scene, lobe_r, camera.eye, d, settings.bounces, &mut stream)?;
                        assert!(l.is_finite(), "non-finite radiance {l:?} at pixel ({x}, {y})");
                        sum += l;
                        acc.push(l.average());
                    }
                    Ok((sum / f64::from(settings.spp), acc.stats().variance))
                })
                .collect()
        })
        .collect();

    let mut pixels = Vec::with_capacity(w * h);
    let mut variance = Vec::with_capacity(w * h);
    for row in rows {
        for (p, v) in row? {
            pixels.push(p);
            variance.push(v);
        }
    }
    Ok(Rendered { image: Image::from_pixels(w, h, pixels)?, variance })
}

fn trace(
    scene: &Scene,
    lobe_r: FonRoughness,
    mut origin: Vec3,
    mut dir: Vec3,
    bounces: u32,
    stream: &mut SampleStream,
) -> Result<Spectrum> {
    let sphere = &scene.sphere;
    let t_min = 1e-9 * sphere.radius;
    let mut radiance = Spectrum::ZERO;
    let mut beta = Spectrum::ONE;
    for depth in 0..=bounces {
        let Some(t) = sphere.intersect(origin, dir, t_min) else {
            radiance += beta * scene.environment.radiance;
            break;
        };
        if depth == bounces {
            break;
        }
        let p = origin + dir * t;
        let n = (p - sphere.center) * (1.0 / sphere.radius);
        let frame = Frame::from_normal(n);
        let wo = frame.to_local(-dir);
        if wo.z <= 0.0 {
            break;
        }
        let wo = Direction::normalize(wo)?;
        let surface = p + n * (1e-7 * sphere.radius);

        if let Some(light) = scene.environment.light {
            let l = light.direction.vec();
            if l.dot(n) > 0.0 && sphere.intersect(surface, l, t_min).is_none() {
                let wi = Direction::normalize(frame.to_local(l))?;
                radiance += beta * scene.material.eval(wi, wo)? * light.radiance * wi.z();
            }
        }

        match scene.sampler.sample(wo, lobe_r, stream.next_pair())? {
            Some(s) if s.pdf > 0.0 && s.wi.z() > 0.0 => {
                beta = beta * scene.material.eval(s.wi, wo)? * (s.wi.z() / s.pdf);
                origin = surface;
                dir = frame.to_world(s.wi.vec()).normalized();
            }
            _ => break,
        }
    }
    Ok(radiance)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelClass {
    /// Every corner of the pixel sees the sphere.
    Sphere,
    /// No corner sees the sphere.
    Background,
    Edge,
}

pub fn classify_pixels(scene: &Scene, camera: &Camera, width: usize, height: usize) -> Vec<PixelClass> {
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let hits = [(0, 0), (1, 0), (0, 1), (1, 1)]
                .iter()
                .filter(|&&(dx, dy)| {
                    let d = camera.ray((x + dx) as f64, (y + dy) as f64, width, height);
                    scene.sphere.intersect(camera.eye, d, 0.0).is_some()
                })
                .count();
            out.push(match hits {
                4 => PixelClass::Sphere,
                0 => PixelClass::Background,
                _ => PixelClass::Edge,
            });
        }
    }
    out
}

/// Sphere-versus-background brightness on channel means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FurnaceMetric {
    pub sphere_mean: f64,
    pub background_mean: f64,
    /// `|sphere_mean / background_mean - 1|`.
    pub deviation: f64,
    /// Mean over sphere pixels of `|pixel / background_mean - 1|`; includes
    /// Monte Carlo noise.
    pub mean_abs_deviation: f64,
    pub sphere_pixels: usize,
}

pub fn furnace_metric(image: &Image, classes: &[PixelClass]) -> Result<FurnaceMetric> {
    if classes.len() != image.pixels().len() {
        return Err(Error::InvalidParameter("pixel classes do not match the image".into()));
    }
    let mean_of = |class: PixelClass| {
        let v: Vec<f64> =
            image.pixels().iter().zip(classes).filter(|(_, &c)| c == class).map(|(p, _)| p.average()).collect();
        (v.iter().sum::<f64>() / v.len() as f64, v)
    };
    let (background_mean, bg) = mean_of(PixelClass::Background);
    let (sphere_mean, sphere) = mean_of(PixelClass::Sphere);
    if bg.is_empty() || sphere.is_empty() || background_mean <= 0.0 {
        return Err(Error::InvalidParameter("image needs lit background and sphere pixels".into()));
    }
    let mean_abs_deviation =
        sphere.iter().map(|p| (p / background_mean - 1.0).abs()).sum::<f64>() / sphere.len() as f64;
    Ok(FurnaceMetric {
        sphere_mean,
        background_mean,
        deviation: (sphere_mean / background_mean - 1.0).abs(),
        mean_abs_deviation,
        sphere_pixels: sphere.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brdf::{AlbedoFlavor, Model, QonRoughness, QonVariant};

    fn settings(spp: u32, seed: u64) -> RenderSettings {
        RenderSettings { width: 24, height: 24, spp, bounces: 50, seed }
    }

    #[test]
    fn lambert_furnace_vanishes() {
        let m = Material::new(Model::Lambert, Spectrum::ONE).unwrap();
        let scene = Scene::furnace(m, Strategy::Cosine).unwrap();
        let img = render(&scene, &Camera::default(), settings(4, 1)).unwrap();
        for p in img.pixels() {
            assert!((p.average() - 1.0).abs() < 1e-12, "{p:?}");
        }
    }

    #[test]
    fn qon_furnace_is_dark() {
        let sigma = QonRoughness::new(std::f64::consts::FRAC_PI_2).unwrap();
        let m = Material::new(Model::Qon { sigma, variant: QonVariant::Standard }, Spectrum::ONE).unwrap();
        let scene = Scene::furnace(m, Strategy::Cosine).unwrap();
        let cam = Camera::default();
        let img = render(&scene, &cam, settings(64, 2)).unwrap();
        let metric = furnace_metric(&img, &classify_pixels(&scene, &cam, 24, 24)).unwrap();
        assert!(metric.sphere_mean / metric.background_mean < 0.8, "{metric:?}");
    }

    #[test]
    fn same_seed_same_image() {
        let m = Material::new(Model::Eon { r: FonRoughness::ONE, flavor: AlbedoFlavor::Approx }, Spectrum::ONE).unwrap();
        let scene = Scene::furnace(m, Strategy::CltcMis).unwrap();
        let a = render(&scene, &Camera::default(), settings(2, 9)).unwrap();
        let b = render(&scene, &Camera::default(), settings(2, 9)).unwrap();
        let c = render(&scene, &Camera::default(), settings(2, 10)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sphere_covers_center_not_corners() {
        let m = Material::new(Model::Lambert, Spectrum::ONE).unwrap();
        let scene = Scene::furnace(m, Strategy::Cosine).unwrap();
        let classes = classify_pixels(&scene, &Camera::default(), 24, 24);
        assert_eq!(classes[12 * 24 + 12], PixelClass::Sphere);
        assert_eq!(classes[0], PixelClass::Background);
        assert!(classes.contains(&PixelClass::Edge));
    }

    #[test]
    fn directional_light_only_lights_facing_side() {
        let m = Material::new(Model::Lambert, Spectrum::ONE).unwrap();
        let light = Direction::new(1.0, 0.0, 0.0).unwrap();
        let scene = Scene::new(
            Sphere::new(Vec3::new(0.0, 0.0, 0.0), 1.0).unwrap(),
            m,
            Strategy::Cosine,
            Environment::directional(light, Spectrum::ONE),
        )
        .unwrap();
        let img = render(&scene, &Camera::default(), settings(1, 1)).unwrap();
        assert!(img.get(16, 12).average() > 0.1);
        assert_eq!(img.get(7, 12).average(), 0.0);
        assert_eq!(img.get(0, 0).average(), 0.0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Sphere::new(Vec3::new(0.0, 0.0, 0.0), 0.0).is_err());
        let m = Material::new(Model::Lambert, Spectrum::ONE).unwrap();
        let scene = Scene::furnace(m, Strategy::Cosine).unwrap();
        assert!(render(&scene, &Camera::default(), settings(0, 1)).is_err());
        let qon = Material::new(
            Model::Qon { sigma: QonRoughness::new(0.5).unwrap(), variant: QonVariant::Standard },
            Spectrum::ONE,
        )
        .unwrap();
        assert!(Scene::furnace(qon, Strategy::CltcMis).is_err());
        assert!(Scene::new(
            Sphere::new(Vec3::new(0.0, 0.0, 0.0), 1.0).unwrap(),
            m,
            Strategy::Cosine,
            Environment::uniform(Spectrum::splat(-1.0)),
        )
        .is_err());
    }
}
