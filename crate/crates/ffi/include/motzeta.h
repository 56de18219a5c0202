#ifndef MOTZETA_H
#define MOTZETA_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum MzStatus {
  MZ_STATUS_OK = 0,
  MZ_STATUS_NULL_POINTER = 1,
  MZ_STATUS_INVALID_UTF8 = 2,
  MZ_STATUS_PARSE = 3,
  MZ_STATUS_INVALID_INPUT = 4,
  MZ_STATUS_DIVISION_BY_ZERO = 5,
  MZ_STATUS_SCOPE = 6,
  MZ_STATUS_BUDGET = 7,
  MZ_STATUS_VALIDATION = 8,
  MZ_STATUS_OUT_OF_RANGE = 9,
  MZ_STATUS_INTERNAL = 10,
  MZ_STATUS_PANIC = 11,
} MzStatus;

/**
 * An element of the localized Grothendieck ring.
 */
typedef struct MzClass MzClass;

/**
 * A plane curve singularity.
 */
typedef struct MzCurve MzCurve;

/**
 * A truncated power series in `T` with class coefficients.
 */
typedef struct MzSeries MzSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mz_last_error(void);

/**
 * Library version as a static string.
 */
const char *mz_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be NULL or a pointer returned by a `*_to_string` call.
 */
void mz_string_free(char *s);

/**
 * Parses a class such as `(L^2-1)/(L-1)` or `L^(-3/2)`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MzStatus mz_class_parse(const char *text, struct MzClass **out);

/**
 * `L^(k/2)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MzStatus mz_class_q_pow(int64_t k, struct MzClass **out);

/**
 * `a + b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum MzStatus mz_class_add(const struct MzClass *a, const struct MzClass *b, struct MzClass **out);

/**
 * `a - b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum MzStatus mz_class_sub(const struct MzClass *a, const struct MzClass *b, struct MzClass **out);

/**
 * `a * b`.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum MzStatus mz_class_mul(const struct MzClass *a, const struct MzClass *b, struct MzClass **out);

/**
 * `a / b`; fails with `DivisionByZero` when `b` is zero.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum MzStatus mz_class_div(const struct MzClass *a, const struct MzClass *b, struct MzClass **out);

/**
 * Adams operation `psi_k`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_class_adams(const struct MzClass *a, uint32_t k, struct MzClass **out);

/**
 * Writes 1 to `out` if the classes are equal, else 0.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum MzStatus mz_class_equal(const struct MzClass *a, const struct MzClass *b, int32_t *out);

/**
 * Canonical text of a class, or NULL if `a` is NULL. Free with `mz_string_free`.
 *
 * # Safety
 * `a` must be NULL or a live handle.
 */
char *mz_class_to_string(const struct MzClass *a);

/**
 * # Safety
 * `a` must be NULL or a handle not yet freed.
 */
void mz_class_free(struct MzClass *a);

/**
 * Looks up a builtin curve by name (`smooth`, `node`, `cusp`, ...).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MzStatus mz_curve_builtin(const char *name, struct MzCurve **out);

/**
 * Reads a curve from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MzStatus mz_curve_from_json(const char *json, struct MzCurve **out);

/**
 * # Safety
 * `c` must be NULL or a handle not yet freed.
 */
void mz_curve_free(struct MzCurve *c);

/**
 * Motivic Poincare series of the curve up to `T^n`.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_curve_poincare(const struct MzCurve *c, uintptr_t n, struct MzSeries **out);

/**
 * Class of the contact locus `X_n` of `f` in `m` variables.
 *
 * # Safety
 * `f` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MzStatus mz_contact_class(const char *f, uintptr_t m, uintptr_t n, struct MzClass **out);

/**
 * Number of stored coefficients, `T^0` through `T^(len-1)`.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
uintptr_t mz_series_len(const struct MzSeries *s);

/**
 * Copy of the coefficient of `T^i`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_series_coeff(const struct MzSeries *s, uintptr_t i, struct MzClass **out);

/**
 * Text of a series, or NULL if `s` is NULL. Free with `mz_string_free`.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
char *mz_series_to_string(const struct MzSeries *s);

/**
 * JSON form of a series, or NULL if `s` is NULL. Free with `mz_string_free`.
 *
 * # Safety
 * `s` must be NULL or a live handle.
 */
char *mz_series_to_json(const struct MzSeries *s);

/**
 * # Safety
 * `s` must be NULL or a handle not yet freed.
 */
void mz_series_free(struct MzSeries *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOTZETA_H */
