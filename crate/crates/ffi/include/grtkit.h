#ifndef GRTKIT_H
#define GRTKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum GrtStatus {
  /**
   * The call succeeded and, for checks, every residual passed.
   */
  GRT_OK = 0,
  /**
   * The call succeeded but a check failed.
   */
  GRT_CHECK_FAILED = 1,
  GRT_NULL_POINTER = 2,
  GRT_INVALID_UTF8 = 3,
  GRT_PARSE_ERROR = 4,
  GRT_ALPHABET_MISMATCH = 5,
  GRT_PRECONDITION = 6,
  GRT_PRECISION_TOO_LOW = 7,
  GRT_NOT_REPRESENTABLE = 8,
  GRT_IO_ERROR = 9,
  GRT_PANIC = 10,
} GrtStatus;

/**
 * Opaque series handle.
 */
typedef struct GrtSeries GrtSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call on this thread.
 */
const char *grt_last_error(void);

/**
 * Library version as a static string.
 */
const char *grt_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void grt_string_free(char *s);

/**
 * Parses a series from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum GrtStatus grt_series_from_json(const char *json, struct GrtSeries **out);

/**
 * Renders a series as JSON.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_series_to_json(const struct GrtSeries *series, char **out);

/**
 * Truncation degree of a series.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum GrtStatus grt_series_truncation(const struct GrtSeries *series, size_t *out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `series` must come from this library and not have been freed.
 */
void grt_series_free(struct GrtSeries *series);

/**
 * Pentagon residual. Returns `GrtOk` when it passes, `GrtCheckFailed`
 * otherwise; the residual is written either way.
 *
 * # Safety
 * `series` must be a live handle; `residual` must be writable.
 */
enum GrtStatus grt_check_pentagon(const struct GrtSeries *series, double *residual);

/**
 * Largest residual of the two hexagons. `mu` is `auto`, `2pii`, `-2pii`,
 * a rational or `re,im`; `auto` accepts either sign of the recovered root.
 *
 * # Safety
 * `series` must be a live handle, `mu` a NUL-terminated string and
 * `residual` writable.
 */
enum GrtStatus grt_check_hexagons(const struct GrtSeries *series, const char *mu, double *residual);

/**
 * GRT1 membership (group-like, pentagon, no linear or quadratic terms).
 *
 * # Safety
 * `series` must be a live handle.
 */
enum GrtStatus grt_check_grt1(const struct GrtSeries *series);

/**
 * DMR0 membership; `kill_linear` is non-zero to drop linear terms first.
 *
 * # Safety
 * `series` must be a live handle.
 */
enum GrtStatus grt_check_dmr0(const struct GrtSeries *series, int32_t kill_linear);

/**
 * The group law `phi2 ∘ phi1`. Both series must share a ring.
 *
 * # Safety
 * `phi2` and `phi1` must be live handles; `out` must be writable.
 */
enum GrtStatus grt_mul(const struct GrtSeries *phi2,
                       const struct GrtSeries *phi1,
                       struct GrtSeries **out);

/**
 * The Drinfeld associator to `weight` at `digits` decimal digits.
 *
 * # Safety
 * `out` must be writable.
 */
enum GrtStatus grt_build_kz(uint32_t weight, uint32_t digits, struct GrtSeries **out);

/**
 * Decimal value of `zeta(index)`, e.g. index `"2,3"`.
 *
 * # Safety
 * `index` must be a NUL-terminated string; `out` must be writable.
 */
enum GrtStatus grt_mzv_eval(const char *index, uint32_t digits, char **out);

/**
 * Runs a command-line invocation (without the program name) and returns
 * its JSON report. The status follows the report's verdict.
 *
 * # Safety
 * `argv` must point to `argc` NUL-terminated strings; `out` must be
 * writable.
 */
enum GrtStatus grt_run(size_t argc, const char *const *argv, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRTKIT_H */
