#ifndef HOCHSCHILD_H
#define HOCHSCHILD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum HhStatus {
  HH_STATUS_OK = 0,
  HH_STATUS_NULL_POINTER = 1,
  HH_STATUS_INVALID_UTF8 = 2,
  HH_STATUS_PARSE = 3,
  HH_STATUS_SCHEMA = 4,
  HH_STATUS_INVALID_FIELD = 5,
  HH_STATUS_AXIOM = 6,
  HH_STATUS_OUT_OF_RANGE = 7,
  HH_STATUS_COMPUTATION = 8,
  HH_STATUS_BUFFER_TOO_SMALL = 9,
  HH_STATUS_PANIC = 10,
} HhStatus;

/**
 * A parsed algebra or bialgebra.
 */
typedef struct HhAlgebra HhAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Owned by the
 * library and valid until the next failing call on the same thread.
 */
const char *hh_last_error(void);

/**
 * Parses and checks a JSON algebra file; `*out` receives a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum HhStatus hh_algebra_from_json(const char *json, struct HhAlgebra **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `a` must come from [`hh_algebra_from_json`] and not be used afterwards.
 */
void hh_algebra_free(struct HhAlgebra *a);

/**
 * Dimension of the algebra over its field.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_algebra_dim(const struct HhAlgebra *a, size_t *out);

/**
 * Characteristic of the base field, 0 for the rationals.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_algebra_characteristic(const struct HhAlgebra *a, uint32_t *out);

/**
 * The canonical JSON form; free `*out` with [`hh_string_free`].
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum HhStatus hh_algebra_to_json(const struct HhAlgebra *a, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void hh_string_free(char *s);

/**
 * Writes dim HH^0..HH^max into `out[0..=max]`; `len` is the buffer length.
 *
 * # Safety
 * `a` must be a live handle and `out` point to `len` writable values.
 */
enum HhStatus hh_hochschild_dims(const struct HhAlgebra *a, size_t max, size_t *out, size_t len);

/**
 * Runs the "gerstenhaber" or "axioms" suite; `*passed` is 1 or 0. For
 * "axioms", `trials` is the top degree.
 *
 * # Safety
 * `a` must be a live handle, `suite` a nul-terminated string and `passed` a
 * valid pointer.
 */
enum HhStatus hh_verify(const struct HhAlgebra *a,
                        const char *suite,
                        uint64_t seed,
                        size_t trials,
                        int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOCHSCHILD_H */
