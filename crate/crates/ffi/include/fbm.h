#ifndef FBM_H
#define FBM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Operator selector for [`fbm_compat_json`].
 */
typedef enum {
  FBM_SHIFT_E = 0,
  FBM_SHIFT_X = 1,
} FbmShift;

/**
 * Result codes; the nonzero values below 5 match the command-line exit codes.
 */
typedef enum {
  FBM_STATUS_OK = 0,
  FBM_STATUS_OTHER = 1,
  FBM_STATUS_PARSE = 2,
  FBM_STATUS_NO_COMPATIBILITY = 3,
  FBM_STATUS_VERIFICATION = 4,
  FBM_STATUS_NULL_ARGUMENT = 5,
  FBM_STATUS_INVALID_UTF8 = 6,
  FBM_STATUS_PANIC = 7,
} FbmStatus;

/**
 * Opaque factorial basis.
 */
typedef struct FbmBasis FbmBasis;

/**
 * Opaque operator in `x` and `E`.
 */
typedef struct FbmOperator FbmOperator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a basis in the textual form, e.g. `product(binomial(1,0),binomial(1,0))`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.  The
 * handle written to `*out` must be released with [`fbm_basis_free`].
 */
FbmStatus fbm_basis_parse(const char *spec, FbmBasis **out);

/**
 * Number of sections of a basis, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a handle from [`fbm_basis_parse`].
 */
uintptr_t fbm_basis_sections(const FbmBasis *b);

/**
 * # Safety
 * `b` must be null or a handle from [`fbm_basis_parse`] not yet freed.
 */
void fbm_basis_free(FbmBasis *b);

/**
 * Parses an operator such as `(x+2)^2*E^2 - (11*x^2+33*x+25)*E - (x+1)^2`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer.  The
 * handle written to `*out` must be released with [`fbm_operator_free`].
 */
FbmStatus fbm_operator_parse(const char *src, FbmOperator **out);

/**
 * # Safety
 * `op` must be null or a handle from [`fbm_operator_parse`] not yet freed.
 */
void fbm_operator_free(FbmOperator *op);

/**
 * Section-0 solutions as JSON, verified on `lo..=hi`.  A failed
 * verification still writes the report and returns
 * [`FbmStatus::Verification`].
 *
 * # Safety
 * `op` and `b` must be live handles and `out` a valid pointer.  The string
 * written to `*out` must be released with [`fbm_string_free`].
 */
FbmStatus fbm_solve_json(const FbmOperator *op,
                         const FbmBasis *b,
                         uintptr_t lo,
                         uintptr_t hi,
                         char **out);

/**
 * `[RE]`, `[RX]` and, when `op` is not null, `[RL]` as JSON.
 *
 * # Safety
 * `b` must be a live handle, `op` null or a live handle, and `out` a valid
 * pointer.  The string written to `*out` must be released with
 * [`fbm_string_free`].
 */
FbmStatus fbm_matrix_json(const FbmOperator *op, const FbmBasis *b, char **out);

/**
 * Expansion coefficients of `E` or `X` as JSON.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.  The string written
 * to `*out` must be released with [`fbm_string_free`].
 */
FbmStatus fbm_compat_json(const FbmBasis *b, FbmShift which, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void fbm_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null.  The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *fbm_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FBM_H */
