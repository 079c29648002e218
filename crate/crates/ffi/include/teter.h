#ifndef TETER_H
#define TETER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TeterRandomSense {
  TETER_RANDOM_SENSE_GRADED = 0,
  TETER_RANDOM_SENSE_LOCAL = 1,
} TeterRandomSense;

typedef enum TeterRandomVerdict {
  TETER_RANDOM_VERDICT_PROBABLY_NO = 0,
  TETER_RANDOM_VERDICT_YES = 1,
  TETER_RANDOM_VERDICT_GORENSTEIN = 2,
} TeterRandomVerdict;

typedef enum TeterStatus {
  TETER_STATUS_OK = 0,
  TETER_STATUS_NULL_ARGUMENT = 1,
  TETER_STATUS_INVALID_UTF8 = 2,
  TETER_STATUS_MALFORMED = 3,
  TETER_STATUS_NOT_ARTINIAN = 4,
  TETER_STATUS_UNIT_IDEAL = 5,
  TETER_STATUS_GORENSTEIN = 6,
  TETER_STATUS_INVALID_ARGUMENT = 7,
  TETER_STATUS_INTERNAL = 8,
  TETER_STATUS_PANIC = 9,
} TeterStatus;

typedef enum TeterTypeVerdict {
  TETER_TYPE_VERDICT_NO = 0,
  TETER_TYPE_VERDICT_YES = 1,
  TETER_TYPE_VERDICT_GORENSTEIN = 2,
} TeterTypeVerdict;

/**
 * Opaque handle to a parsed ideal and its divisor poset.
 */
typedef struct TeterIdeal TeterIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an ideal given as JSON (`{"vars":..,"generators":..}`) or as an
 * expression such as `x^3, y^4, x*y^2`, and builds its divisor poset.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TeterStatus teter_ideal_parse(const char *text, struct TeterIdeal **out);

/**
 * Releases a handle from [`teter_ideal_parse`]. Null is ignored.
 *
 * # Safety
 * `ideal` must be null or a handle not yet freed.
 */
void teter_ideal_free(struct TeterIdeal *ideal);

/**
 * Number of standard monomials of `R = S/I`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a valid pointer.
 */
enum TeterStatus teter_ideal_length(const struct TeterIdeal *ideal, size_t *out);

/**
 * Writes the full multigraded trace report as a JSON string.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a valid pointer. The string is
 * owned by the caller and released with [`teter_string_free`].
 */
enum TeterStatus teter_trace_report_json(const struct TeterIdeal *ideal, char **out);

/**
 * Decides Teter type in the multigraded sense.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a valid pointer.
 */
enum TeterStatus teter_type_multigraded(const struct TeterIdeal *ideal, enum TeterTypeVerdict *out);

/**
 * Randomized Teter-type test over `F_prime` in the graded or local sense.
 * `Yes` is certified; `ProbablyNo` is a Monte Carlo answer.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a valid pointer.
 */
enum TeterStatus teter_type_randomized(const struct TeterIdeal *ideal,
                                       enum TeterRandomSense sense,
                                       uint64_t prime,
                                       uint32_t trials,
                                       uint64_t seed,
                                       enum TeterRandomVerdict *out);

/**
 * Multigraded Teter number: the fewest multigraded homomorphisms whose
 * images sum to the trace. Writes 0 when the cover search exceeds its cap.
 * Fails with `Gorenstein` on Gorenstein rings.
 *
 * # Safety
 * `ideal` must be a live handle and `out` a valid pointer.
 */
enum TeterStatus teter_number(const struct TeterIdeal *ideal, size_t *out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void teter_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *teter_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TETER_H */
