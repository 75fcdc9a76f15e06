#ifndef EQUITRACE_H
#define EQUITRACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `EQT_OK` is zero; everything else is a failure.
 */
typedef enum EqtStatus {
  EQT_OK = 0,
  EQT_NULL_POINTER = 1,
  EQT_INVALID_UTF8 = 2,
  EQT_PARSE = 3,
  EQT_INVALID_INPUT = 4,
  EQT_DIVISION_BY_ZERO = 5,
  EQT_NOT_RATIONAL = 6,
  EQT_ZERO_RECIPROCAL = 7,
  EQT_WINDOW_EXHAUSTED = 8,
  EQT_NOT_POLYNOMIAL = 9,
  EQT_INTERNAL_MISMATCH = 10,
  EQT_EMPTY_SPECTRUM = 11,
  EQT_NON_INTEGRAL_VALUE = 12,
  EQT_SEARCH_CAP_EXCEEDED = 13,
  EQT_CAP_EXCEEDED = 14,
  /**
   * The value does not fit the requested fixed-width output.
   */
  EQT_OVERFLOW = 15,
  EQT_PANIC = 99,
} EqtStatus;

/**
 * Opaque handle to a hypersurface degree together with an eigenvalue spectrum.
 */
typedef struct EqtAction EqtAction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or an empty string. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *eqt_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void eqt_string_free(char *s);

/**
 * Builds an action from a degree and a spectrum such as `"2: 0^3, 1^1"`.
 *
 * # Safety
 * `spectrum` must be a NUL-terminated string; `out` must be writable.
 */
enum EqtStatus eqt_action_new(uint32_t degree, const char *spectrum, struct EqtAction **out);

/**
 * Releases an action. Null is ignored.
 *
 * # Safety
 * `a` must come from [`eqt_action_new`] and must not be used afterwards.
 */
void eqt_action_free(struct EqtAction *a);

/**
 * Dimension n of the hypersurface.
 *
 * # Safety
 * `a` must be a live action; `out` must be writable.
 */
enum EqtStatus eqt_action_dimension(const struct EqtAction *a, uint32_t *out);

/**
 * Trace on primitive middle cohomology as a reduced fraction. Fails with
 * `EqtOverflow` when the value does not fit in 64 bits.
 *
 * # Safety
 * `a` must be a live action; `num` and `den` must be writable.
 */
enum EqtStatus eqt_action_trace_rational(const struct EqtAction *a, int64_t *num, int64_t *den);

/**
 * Trace as JSON: `{"trace": "...", "value": {"conductor": N, "coeffs": [...]}}`.
 *
 * # Safety
 * `a` must be a live action; `out` must be writable.
 */
enum EqtStatus eqt_action_trace_json(const struct EqtAction *a, char **out);

/**
 * chi_y of the hypersurface and of its primitive part, as JSON strings.
 *
 * # Safety
 * `a` must be a live action; `out` must be writable.
 */
enum EqtStatus eqt_action_chi_y_json(const struct EqtAction *a, uint32_t window_slack, char **out);

/**
 * Primitive Hodge numbers h^{p,n-p} for p = 0..n, as a JSON array of strings.
 *
 * # Safety
 * `out` must be writable.
 */
enum EqtStatus eqt_primitive_hodge_numbers_json(uint32_t n, uint32_t d, char **out);

/**
 * Whether sigma -> l^{m_1(sigma) - 1} on S_n (times the sign character if
 * `signed` is set) is a character.
 *
 * # Safety
 * `out` must be writable.
 */
enum EqtStatus eqt_theta_is_character(uint32_t n, uint64_t l, bool signed_, bool *out);

/**
 * Library version, a static string.
 */
const char *eqt_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EQUITRACE_H */
