//! C ABI over `eon-core`.
//!
//! Materials are opaque handles created by [`eon_material_new`] and released
//! with [`eon_material_free`]. Every fallible call returns an [`EonStatus`]
//! and writes its result through an out-pointer only on success. Panics are
//! caught at the boundary and reported as [`EonStatus::Panic`].

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use eon::sampling::{ltc_coeffs, RandomPair, Strategy};
use eon::{brdf, AlbedoFlavor, Direction, Error, FonRoughness, Material, Model, QonRoughness, QonVariant, Spectrum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EonStatus {
    Ok = 0,
    NullPointer = 1,
    /// A roughness, cosine, albedo or variate outside its range.
    OutOfRange = 2,
    /// A direction that is not unit length.
    NotUnit = 3,
    /// A direction below the surface, or a grazing outgoing direction passed
    /// to a sampler.
    BelowHorizon = 4,
    InvalidArgument = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EonModel {
    Lambert = 0,
    Qon = 1,
    QonFootnote = 2,
    Fon = 3,
    EonExact = 4,
    EonApprox = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EonVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EonRgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EonSample {
    pub wi: EonVec3,
    pub pdf: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EonLtcCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Opaque material handle.
pub struct EonMaterial {
    material: Material,
    sampler: Strategy,
    lobe_r: FonRoughness,
}

impl From<&Error> for EonStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotUnit { .. } => EonStatus::NotUnit,
            Error::BelowHorizon { .. } | Error::GrazingOutgoing { .. } => EonStatus::BelowHorizon,
            Error::SigmaOutOfRange(_)
            | Error::RoughnessOutOfRange(_)
            | Error::CosineOutOfRange(_)
            | Error::AlbedoOutOfRange(_)
            | Error::VariateOutOfRange(_) => EonStatus::OutOfRange,
            Error::InvalidParameter(_) | Error::Io(_) => EonStatus::InvalidArgument,
        }
    }
}

fn guard(f: impl FnOnce() -> Result<(), EonStatus>) -> EonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EonStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => EonStatus::Panic,
    }
}

trait IntoStatus<T> {
    fn status(self) -> Result<T, EonStatus>;
}

impl<T> IntoStatus<T> for eon::Result<T> {
    fn status(self) -> Result<T, EonStatus> {
        self.map_err(|e| EonStatus::from(&e))
    }
}

fn direction(v: EonVec3) -> Result<Direction, EonStatus> {
    Direction::new(v.x, v.y, v.z).status()
}

fn vec3(d: Direction) -> EonVec3 {
    EonVec3 { x: d.x(), y: d.y(), z: d.z() }
}

fn rgb(s: Spectrum) -> EonRgb {
    EonRgb { r: s.r, g: s.g, b: s.b }
}

/// # Safety
/// `ptr` must be null or valid for writes of `T`.
unsafe fn write_out<T>(ptr: *mut T, value: T) -> Result<(), EonStatus> {
    if ptr.is_null() {
        return Err(EonStatus::NullPointer);
    }
    ptr.write(value);
    Ok(())
}

/// # Safety
/// `ptr` must be null or a live handle from [`eon_material_new`].
unsafe fn handle<'a>(ptr: *const EonMaterial) -> Result<&'a EonMaterial, EonStatus> {
    ptr.as_ref().ok_or(EonStatus::NullPointer)
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn eon_status_string(status: EonStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        EonStatus::Ok => b"ok\0",
        EonStatus::NullPointer => b"null pointer\0",
        EonStatus::OutOfRange => b"parameter out of range\0",
        EonStatus::NotUnit => b"direction is not unit length\0",
        EonStatus::BelowHorizon => b"direction below the horizon\0",
        EonStatus::InvalidArgument => b"invalid argument\0",
        EonStatus::Panic => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Creates a material. `roughness` is sigma in radians for the QON models,
/// `r` in `[0, 1]` for FON and EON, and ignored for Lambert. Sampling uses
/// CLTC with the uniform lobe for FON, EON and Lambert (where it reduces to
/// cosine sampling) and cosine sampling for QON.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_material_new(
    model: EonModel,
    roughness: f64,
    rho: EonRgb,
    out: *mut *mut EonMaterial,
) -> EonStatus {
    guard(|| {
        if out.is_null() {
            return Err(EonStatus::NullPointer);
        }
        let model = match model {
            EonModel::Lambert => Model::Lambert,
            EonModel::Qon | EonModel::QonFootnote => Model::Qon {
                sigma: QonRoughness::new(roughness).status()?,
                variant: if model == EonModel::Qon { QonVariant::Standard } else { QonVariant::Footnote },
            },
            EonModel::Fon => Model::Fon { r: FonRoughness::new(roughness).status()? },
            EonModel::EonExact | EonModel::EonApprox => Model::Eon {
                r: FonRoughness::new(roughness).status()?,
                flavor: if model == EonModel::EonExact { AlbedoFlavor::Exact } else { AlbedoFlavor::Approx },
            },
        };
        let rho = Spectrum::albedo(rho.r, rho.g, rho.b).status()?;
        let material = Material::new(model, rho).status()?;
        let (sampler, lobe_r) = match model.lobe_roughness() {
            Some(r) => (Strategy::CltcMis, r),
            None => (Strategy::Cosine, FonRoughness::ZERO),
        };
        write_out(out, Box::into_raw(Box::new(EonMaterial { material, sampler, lobe_r })))
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `material` must be null or a handle from [`eon_material_new`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn eon_material_free(material: *mut EonMaterial) {
    if !material.is_null() {
        drop(Box::from_raw(material));
    }
}

/// BRDF value for unit directions in the shading frame (normal `+z`).
///
/// # Safety
/// `material` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_material_eval(
    material: *const EonMaterial,
    wi: EonVec3,
    wo: EonVec3,
    out: *mut EonRgb,
) -> EonStatus {
    guard(|| {
        let m = handle(material)?;
        let f = m.material.eval(direction(wi)?, direction(wo)?).status()?;
        write_out(out, rgb(f))
    })
}

/// Draws `wi` for the outgoing direction `wo` (`wo.z > 0`) from two
/// variates in `[0, 1]`.
///
/// # Safety
/// `material` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_material_sample(
    material: *const EonMaterial,
    wo: EonVec3,
    u1: f64,
    u2: f64,
    out: *mut EonSample,
) -> EonStatus {
    guard(|| {
        let m = handle(material)?;
        let u = RandomPair::new(u1, u2).status()?;
        let s = m
            .sampler
            .sample(direction(wo)?, m.lobe_r, u)
            .status()?
            .ok_or(EonStatus::InvalidArgument)?;
        write_out(out, EonSample { wi: vec3(s.wi), pdf: s.pdf })
    })
}

/// Solid-angle density of [`eon_material_sample`]; 0 below the horizon.
///
/// # Safety
/// `material` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_material_pdf(
    material: *const EonMaterial,
    wo: EonVec3,
    wi: EonVec3,
    out: *mut f64,
) -> EonStatus {
    guard(|| {
        let m = handle(material)?;
        let wo = direction(wo)?;
        if wo.z() <= 0.0 {
            return Err(EonStatus::BelowHorizon);
        }
        let p = m.sampler.pdf(wo, direction(wi)?, m.lobe_r).status()?;
        write_out(out, p)
    })
}

/// Directional albedo at outgoing cosine `mu`.
///
/// # Safety
/// `material` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_material_albedo(material: *const EonMaterial, mu: f64, out: *mut EonRgb) -> EonStatus {
    guard(|| {
        let m = handle(material)?;
        write_out(out, rgb(m.material.directional_albedo(mu).status()?))
    })
}

/// Cosine-weighted average of the directional albedo.
///
/// # Safety
/// `material` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_material_average_albedo(material: *const EonMaterial, out: *mut EonRgb) -> EonStatus {
    guard(|| {
        let m = handle(material)?;
        write_out(out, rgb(m.material.average_albedo()))
    })
}

/// Single-scattering FON albedo at `mu`, exact or fitted.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_fon_albedo(mu: f64, r: f64, exact: bool, out: *mut f64) -> EonStatus {
    guard(|| {
        let r = FonRoughness::new(r).status()?;
        let flavor = if exact { AlbedoFlavor::Exact } else { AlbedoFlavor::Approx };
        write_out(out, brdf::fon_albedo(mu, r, flavor).status()?)
    })
}

/// Coefficients of the LTC lobe fitted at `(mu, r)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn eon_ltc_coeffs(mu: f64, r: f64, out: *mut EonLtcCoeffs) -> EonStatus {
    guard(|| {
        if !(0.0..=1.0).contains(&mu) {
            return Err(EonStatus::OutOfRange);
        }
        let c = ltc_coeffs(mu, FonRoughness::new(r).status()?);
        write_out(out, EonLtcCoeffs { a: c.a, b: c.b, c: c.c, d: c.d })
    })
}
