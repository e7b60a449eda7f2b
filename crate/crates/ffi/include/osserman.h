#ifndef OSSERMAN_H
#define OSSERMAN_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum OssStatus {
  OSS_STATUS_OK = 0,
  OSS_STATUS_NULL_POINTER = 1,
  OSS_STATUS_INVALID_ARGUMENT = 2,
  OSS_STATUS_PARSE_ERROR = 3,
  OSS_STATUS_INVALID_TENSOR = 4,
  OSS_STATUS_INTERNAL = 5,
  OSS_STATUS_PANIC = 6,
} OssStatus;

/**
 * Verdict of a sampled property check.
 */
typedef enum OssVerdict {
  OSS_VERDICT_HOLDS_ON_SAMPLES = 0,
  OSS_VERDICT_VIOLATED = 1,
  OSS_VERDICT_NOT_APPLICABLE = 2,
  OSS_VERDICT_NO_EVIDENCE = 3,
} OssVerdict;

/**
 * Opaque curvature tensor.
 */
typedef struct OssTensor OssTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static NUL-terminated string.
 */
const char *oss_version(void);

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *oss_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void oss_string_free(char *s);

/**
 * Loads a tensor from a JSON tensor file held in memory. Explicit
 * components are not validated here; see [`oss_tensor_validate`].
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum OssStatus oss_tensor_from_json(const char *json, struct OssTensor **out);

/**
 * Constant curvature `k = k_num/k_den` on the space of signature `(p, q)`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum OssStatus oss_tensor_constant_curvature(size_t p,
                                             size_t q,
                                             int64_t k_num,
                                             int64_t k_den,
                                             struct OssTensor **out);

/**
 * Releases a tensor. NULL is ignored.
 *
 * # Safety
 * `t` must come from an `oss_tensor_*` constructor and not have been freed.
 */
void oss_tensor_free(struct OssTensor *t);

/**
 * Dimension `n` of the underlying space.
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
enum OssStatus oss_tensor_dimension(const struct OssTensor *t, size_t *out);

/**
 * Counts violated curvature symmetries; zero means the tensor is valid.
 *
 * # Safety
 * `t` must be a live handle and `violations` writable.
 */
enum OssStatus oss_tensor_validate(const struct OssTensor *t, size_t *violations);

/**
 * Writes the Jacobi operator at `x` (length `n`) to `out` as an `n×n`
 * row-major array.
 *
 * # Safety
 * `x` must hold `n` doubles and `out` room for `n*n`.
 */
enum OssStatus oss_tensor_jacobi_f64(const struct OssTensor *t,
                                     const double *x,
                                     size_t n,
                                     double *out);

/**
 * Exact characteristic polynomial of the Jacobi operator at `x`, given as
 * a JSON array of rational strings. The result is a JSON array of
 * coefficients, constant term first; free it with [`oss_string_free`].
 *
 * # Safety
 * `x_json` must be NUL-terminated and `out` writable.
 */
enum OssStatus oss_tensor_char_poly_json(const struct OssTensor *t, const char *x_json, char **out);

/**
 * Sampled Osserman test with `samples` points per admissible cone.
 *
 * # Safety
 * `t` must be a live handle and `verdict` writable.
 */
enum OssStatus oss_is_osserman(const struct OssTensor *t,
                               size_t samples,
                               uint64_t seed,
                               enum OssVerdict *verdict);

/**
 * Full property report as JSON; free it with [`oss_string_free`].
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
enum OssStatus oss_report_json(const struct OssTensor *t,
                               size_t samples,
                               uint64_t seed,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OSSERMAN_H */
