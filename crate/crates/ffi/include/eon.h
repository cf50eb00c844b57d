#ifndef EON_H
#define EON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EonStatus {
  EonStatus_Ok = 0,
  EonStatus_NullPointer = 1,
  /**
   * A roughness, cosine, albedo or variate outside its range.
   */
  EonStatus_OutOfRange = 2,
  /**
   * A direction that is not unit length.
   */
  EonStatus_NotUnit = 3,
  /**
   * A direction below the surface, or a grazing outgoing direction passed
   * to a sampler.
   */
  EonStatus_BelowHorizon = 4,
  EonStatus_InvalidArgument = 5,
  EonStatus_Panic = 6,
} EonStatus;

typedef enum EonModel {
  EonModel_Lambert = 0,
  EonModel_Qon = 1,
  EonModel_QonFootnote = 2,
  EonModel_Fon = 3,
  EonModel_EonExact = 4,
  EonModel_EonApprox = 5,
} EonModel;

/**
 * Opaque material handle.
 */
typedef struct EonMaterial EonMaterial;

typedef struct EonRgb {
  double r;
  double g;
  double b;
} EonRgb;

typedef struct EonVec3 {
  double x;
  double y;
  double z;
} EonVec3;

typedef struct EonSample {
  struct EonVec3 wi;
  double pdf;
} EonSample;

typedef struct EonLtcCoeffs {
  double a;
  double b;
  double c;
  double d;
} EonLtcCoeffs;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *eon_status_string(enum EonStatus status);

/**
 * Creates a material. `roughness` is sigma in radians for the QON models,
 * `r` in `[0, 1]` for FON and EON, and ignored for Lambert. Sampling uses
 * CLTC with the uniform lobe for FON, EON and Lambert (where it reduces to
 * cosine sampling) and cosine sampling for QON.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EonStatus eon_material_new(enum EonModel model,
                                double roughness,
                                struct EonRgb rho,
                                struct EonMaterial **out);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 * `material` must be null or a handle from [`eon_material_new`] that has not
 * been freed.
 */
void eon_material_free(struct EonMaterial *material);

/**
 * BRDF value for unit directions in the shading frame (normal `+z`).
 *
 * # Safety
 * `material` must be a live handle and `out` valid for writes.
 */
enum EonStatus eon_material_eval(const struct EonMaterial *material,
                                 struct EonVec3 wi,
                                 struct EonVec3 wo,
                                 struct EonRgb *out);

/**
 * Draws `wi` for the outgoing direction `wo` (`wo.z > 0`) from two
 * variates in `[0, 1]`.
 *
 * # Safety
 * `material` must be a live handle and `out` valid for writes.
 */
enum EonStatus eon_material_sample(const struct EonMaterial *material,
                                   struct EonVec3 wo,
                                   double u1,
                                   double u2,
                                   struct EonSample *out);

/**
 * Solid-angle density of [`eon_material_sample`]; 0 below the horizon.
 *
 * # Safety
 * `material` must be a live handle and `out` valid for writes.
 */
enum EonStatus eon_material_pdf(const struct EonMaterial *material,
                                struct EonVec3 wo,
                                struct EonVec3 wi,
                                double *out);

/**
 * Directional albedo at outgoing cosine `mu`.
 *
 * # Safety
 * `material` must be a live handle and `out` valid for writes.
 */
enum EonStatus eon_material_albedo(const struct EonMaterial *material,
                                   double mu,
                                   struct EonRgb *out);

/**
 * Cosine-weighted average of the directional albedo.
 *
 * # Safety
 * `material` must be a live handle and `out` valid for writes.
 */
enum EonStatus eon_material_average_albedo(const struct EonMaterial *material, struct EonRgb *out);

/**
 * Single-scattering FON albedo at `mu`, exact or fitted.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EonStatus eon_fon_albedo(double mu, double r, bool exact, double *out);

/**
 * Coefficients of the LTC lobe fitted at `(mu, r)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EonStatus eon_ltc_coeffs(double mu, double r, struct EonLtcCoeffs *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EON_H */
