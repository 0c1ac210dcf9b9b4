#ifndef AFFINE_ENDO_H
#define AFFINE_ENDO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every exported function.
 */
typedef enum AeStatus {
  AE_STATUS_OK = 0,
  AE_STATUS_NULL_POINTER = 1,
  /**
   * Malformed argument: bad field order, bad JSON, point or element out of range.
   */
  AE_STATUS_INVALID_INPUT = 2,
  /**
   * The incidence structure fails an affine-plane axiom.
   */
  AE_STATUS_NOT_AN_AFFINE_PLANE = 3,
  /**
   * A verification ran and at least one check failed.
   */
  AE_STATUS_VERIFICATION_FAILED = 4,
  AE_STATUS_ZERO_HAS_NO_INVERSE = 5,
  /**
   * The translation group is not transitive, so no skew-field is built.
   */
  AE_STATUS_NOT_A_TRANSLATION_PLANE = 6,
  AE_STATUS_INTERNAL = 7,
} AeStatus;

/**
 * An affine plane that has passed the axiom check.
 */
typedef struct AePlane AePlane;

/**
 * The skew-field of trace-preserving endomorphisms of a plane. Elements
 * are numbered `0..order`, with 0 the zero and 1 the identity.
 */
typedef struct AeSkewField AeSkewField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static, NUL-terminated description of a status code. Never NULL.
 */
const char *ae_status_message(enum AeStatus status);

/**
 * Builds AG(2, q) over GF(q) with the default modulus (q ≤ 16).
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum AeStatus ae_plane_build_ag2(size_t q, struct AePlane **out);

/**
 * Parses `{"num_points": N, "lines": [[...], ...]}` and checks the axioms.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be valid for a pointer write.
 */
enum AeStatus ae_plane_from_json(const char *json, struct AePlane **out);

/**
 * # Safety
 * `plane` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_plane_num_points(const struct AePlane *plane, size_t *out);

/**
 * # Safety
 * `plane` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_plane_num_lines(const struct AePlane *plane, size_t *out);

/**
 * Number of parallel classes.
 *
 * # Safety
 * `plane` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_plane_num_directions(const struct AePlane *plane, size_t *out);

/**
 * Canonical incidence JSON; free the result with [`ae_string_free`].
 *
 * # Safety
 * `plane` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_plane_to_json(const struct AePlane *plane, char **out);

/**
 * # Safety
 * `plane` must come from this library and not be freed twice. NULL is ignored.
 */
void ae_plane_free(struct AePlane *plane);

/**
 * Builds the translation group and the trace-preserving endomorphisms
 * with respect to `base_point`. The plane handle stays owned by the caller.
 *
 * # Safety
 * `plane` must be a live handle or NULL; `out` must be valid for a pointer write.
 */
enum AeStatus ae_skewfield_new(const struct AePlane *plane,
                               uint32_t base_point,
                               struct AeSkewField **out);

/**
 * Number of elements (the order of the plane).
 *
 * # Safety
 * `sf` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_skewfield_order(const struct AeSkewField *sf, size_t *out);

/**
 * `a + b` by element index.
 *
 * # Safety
 * `sf` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_skewfield_add(const struct AeSkewField *sf, size_t a, size_t b, size_t *out);

/**
 * `a ∘ b` (apply `b` first) by element index.
 *
 * # Safety
 * `sf` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_skewfield_mul(const struct AeSkewField *sf, size_t a, size_t b, size_t *out);

/**
 * Two-sided multiplicative inverse, obtained from the dilation that
 * induces `a`.
 *
 * # Safety
 * `sf` must be a live handle or NULL; `out` must be valid for a write.
 */
enum AeStatus ae_skewfield_inverse(const struct AeSkewField *sf, size_t a, size_t *out);

/**
 * Runs every ring and skew-field check (plus the brute-force oracle when
 * `oracle` is set) and returns `Ok` or `VerificationFailed`. When `out_json`
 * is non-NULL it receives the check list as JSON, to be released with
 * [`ae_string_free`].
 *
 * # Safety
 * `sf` must be a live handle or NULL; `out_json` must be NULL or valid for a write.
 */
enum AeStatus ae_skewfield_verify(const struct AeSkewField *sf, bool oracle, char **out_json);

/**
 * # Safety
 * `sf` must come from this library and not be freed twice. NULL is ignored.
 */
void ae_skewfield_free(struct AeSkewField *sf);

/**
 * # Safety
 * `s` must be a string returned by this library, or NULL.
 */
void ae_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFFINE_ENDO_H */
