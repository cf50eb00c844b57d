use std::ptr;

use eon_ffi::*;

const WHITE: EonRgb = EonRgb { r: 1.0, g: 1.0, b: 1.0 };
const NORMAL: EonVec3 = EonVec3 { x: 0.0, y: 0.0, z: 1.0 };

fn material(model: EonModel, roughness: f64, rho: EonRgb) -> *mut EonMaterial {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { eon_material_new(model, roughness, rho, &mut m) }, EonStatus::Ok);
    assert!(!m.is_null());
    m
}

#[test]
fn lambert_eval() {
    let m = material(EonModel::Lambert, 0.0, WHITE);
    let mut f = EonRgb { r: 0.0, g: 0.0, b: 0.0 };
    let wo = EonVec3 { x: 0.6, y: 0.0, z: 0.8 };
    assert_eq!(unsafe { eon_material_eval(m, NORMAL, wo, &mut f) }, EonStatus::Ok);
    assert!((f.r - std::f64::consts::FRAC_1_PI).abs() < 1e-15);
    unsafe { eon_material_free(m) };
}

#[test]
fn white_eon_albedo_is_one() {
    for model in [EonModel::EonExact, EonModel::EonApprox] {
        let m = material(model, 0.7, WHITE);
        for mu in [0.0, 0.3, 1.0] {
            let mut e = EonRgb { r: 0.0, g: 0.0, b: 0.0 };
            assert_eq!(unsafe { eon_material_albedo(m, mu, &mut e) }, EonStatus::Ok);
            assert!((e.g - 1.0).abs() < 1e-12, "{e:?}");
        }
        let mut avg = EonRgb { r: 0.0, g: 0.0, b: 0.0 };
        assert_eq!(unsafe { eon_material_average_albedo(m, &mut avg) }, EonStatus::Ok);
        assert!((avg.b - 1.0).abs() < 1e-12);
        unsafe { eon_material_free(m) };
    }
}

#[test]
fn sample_matches_pdf() {
    let m = material(EonModel::EonApprox, 1.0, WHITE);
    let wo = EonVec3 { x: 0.8, y: 0.0, z: 0.6 };
    for &(u1, u2) in &[(0.05, 0.3), (0.5, 0.5), (0.93, 0.1)] {
        let mut s = EonSample { wi: NORMAL, pdf: 0.0 };
        assert_eq!(unsafe { eon_material_sample(m, wo, u1, u2, &mut s) }, EonStatus::Ok);
        assert!(s.wi.z >= 0.0);
        let mut p = 0.0;
        assert_eq!(unsafe { eon_material_pdf(m, wo, s.wi, &mut p) }, EonStatus::Ok);
        assert!((p - s.pdf).abs() <= 1e-9 * s.pdf, "{p} vs {}", s.pdf);
    }
    unsafe { eon_material_free(m) };
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(eon_material_new(EonModel::Fon, 1.5, WHITE, &mut m), EonStatus::OutOfRange);
        assert_eq!(eon_material_new(EonModel::Qon, 2.0, WHITE, &mut m), EonStatus::OutOfRange);
        let bad_rho = EonRgb { r: 1.1, g: 0.0, b: 0.0 };
        assert_eq!(eon_material_new(EonModel::Lambert, 0.0, bad_rho, &mut m), EonStatus::OutOfRange);
        assert_eq!(eon_material_new(EonModel::Lambert, 0.0, WHITE, ptr::null_mut()), EonStatus::NullPointer);
        assert!(m.is_null());

        let m = material(EonModel::EonExact, 0.5, WHITE);
        let mut f = EonRgb { r: 0.0, g: 0.0, b: 0.0 };
        let long = EonVec3 { x: 0.0, y: 0.0, z: 2.0 };
        let below = EonVec3 { x: 0.0, y: 0.6, z: -0.8 };
        let grazing = EonVec3 { x: 1.0, y: 0.0, z: 0.0 };
        assert_eq!(eon_material_eval(m, long, NORMAL, &mut f), EonStatus::NotUnit);
        assert_eq!(eon_material_eval(m, below, NORMAL, &mut f), EonStatus::BelowHorizon);
        assert_eq!(eon_material_eval(ptr::null(), NORMAL, NORMAL, &mut f), EonStatus::NullPointer);
        assert_eq!(eon_material_eval(m, NORMAL, NORMAL, ptr::null_mut()), EonStatus::NullPointer);
        let mut s = EonSample { wi: NORMAL, pdf: 0.0 };
        assert_eq!(eon_material_sample(m, grazing, 0.5, 0.5, &mut s), EonStatus::BelowHorizon);
        assert_eq!(eon_material_sample(m, NORMAL, 1.5, 0.5, &mut s), EonStatus::OutOfRange);
        let mut e = EonRgb { r: 0.0, g: 0.0, b: 0.0 };
        assert_eq!(eon_material_albedo(m, -0.1, &mut e), EonStatus::OutOfRange);
        eon_material_free(m);
        eon_material_free(ptr::null_mut());
    }
}

#[test]
fn free_functions() {
    let mut c = EonLtcCoeffs { a: 0.0, b: 0.0, c: 0.0, d: 0.0 };
    assert_eq!(unsafe { eon_ltc_coeffs(1.0, 0.0, &mut c) }, EonStatus::Ok);
    assert_eq!(c, EonLtcCoeffs { a: 1.0, b: 0.0, c: 1.0, d: 0.0 });
    assert_eq!(unsafe { eon_ltc_coeffs(1.2, 0.0, &mut c) }, EonStatus::OutOfRange);

    let (mut exact, mut approx) = (0.0, 0.0);
    assert_eq!(unsafe { eon_fon_albedo(0.3, 0.7, true, &mut exact) }, EonStatus::Ok);
    assert_eq!(unsafe { eon_fon_albedo(0.3, 0.7, false, &mut approx) }, EonStatus::Ok);
    assert!((exact - 0.939604351940122).abs() < 1e-12);
    assert!((approx / exact - 1.0).abs() < 1e-3);
}
