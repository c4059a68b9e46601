/* C ABI for the hgft library. Generated; do not edit. */

#ifndef HGFT_H
#define HGFT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum HgftStatus {
  HgftStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  HgftStatus_NullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HgftStatus_InvalidUtf8 = 2,
  /**
   * Input could not be parsed.
   */
  HgftStatus_ParseError = 3,
  /**
   * A construction invariant was violated (normalization, |b1| < 1,
   * finiteness).
   */
  HgftStatus_InvariantViolation = 4,
  /**
   * A parameter was out of range or an operator multiplier overflowed.
   */
  HgftStatus_InvalidParameter = 5,
  /**
   * Decomposition infeasible for the given function.
   */
  HgftStatus_Infeasible = 6,
  /**
   * Verification inconclusive (pole-proximate samples).
   */
  HgftStatus_Inconclusive = 7,
  /**
   * Other numeric failure.
   */
  HgftStatus_NumericError = 8,
} HgftStatus;

/**
 * Opaque handle to a harmonic mapping.
 */
typedef struct HgftFunction HgftFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static C string; do not free.
 */
const char *hgft_version(void);

/**
 * Parses `{"h": [[re, im], ...], "g": [[re, im], ...]}` into a new handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HgftStatus hgft_function_from_json(const char *json, struct HgftFunction **out);

/**
 * Builds the identity map `f(z) = z` at the given truncation.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HgftStatus hgft_function_identity(uintptr_t truncation, struct HgftFunction **out);

/**
 * Serializes a handle; the result must be released with
 * [`hgft_string_free`]. Returns null on a null handle.
 *
 * # Safety
 * `f` must be null or a live handle from this library.
 */
char *hgft_function_to_json(const struct HgftFunction *f);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void hgft_function_free(struct HgftFunction *f);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void hgft_string_free(char *s);

/**
 * Writes the truncation order of the handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_function_truncation(const struct HgftFunction *f, uintptr_t *out);

/**
 * Evaluates `f(z)` at `z = z_re + i z_im` with `|z| <= 1`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_function_eval(const struct HgftFunction *f,
                                   double z_re,
                                   double z_im,
                                   double *out_re,
                                   double *out_im);

/**
 * Writes the Jacobian `|h'(z)|^2 - |g'(z)|^2` at `z`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_function_jacobian(const struct HgftFunction *f,
                                       double z_re,
                                       double z_im,
                                       double *out);

/**
 * Evaluates the weighted coefficient criterion: writes the sum and whether
 * it stays within the membership bound.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_coefficient_sum(const struct HgftFunction *f,
                                     uint32_t k,
                                     uint32_t lambda,
                                     double gamma,
                                     double *out_sum,
                                     bool *out_verdict);

/**
 * Writes the lower and upper distortion envelopes at radius `r`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_distortion_bounds(uint32_t k,
                                       uint32_t lambda,
                                       double gamma,
                                       double b1_abs,
                                       double r,
                                       double *out_lower,
                                       double *out_upper);

/**
 * Writes the covering-disk radius.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_covering_radius(uint32_t k,
                                     uint32_t lambda,
                                     double gamma,
                                     double b1_abs,
                                     double *out);

/**
 * Applies the integral operator in coefficient form, producing a new handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_bernardi(const struct HgftFunction *f, double c, struct HgftFunction **out);

/**
 * Applies the error convolution followed by the derivative operator
 * (`k = lambda = 0` is the plain error convolution), producing a new handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_transform(const struct HgftFunction *f,
                               uint32_t k,
                               uint32_t lambda,
                               struct HgftFunction **out);

/**
 * Draws a seeded random member of the coefficient body (`subclass` selects
 * real coefficients with the alternating sign pattern), producing a new
 * handle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_random_member(uint32_t k,
                                   uint32_t lambda,
                                   double gamma,
                                   uintptr_t truncation,
                                   double slack,
                                   uint64_t seed,
                                   bool subclass,
                                   struct HgftFunction **out);

/**
 * Evaluates the angular-derivative functional of the transformed pair at a
 * single point.
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_starlike_functional(const struct HgftFunction *f,
                                         uint32_t k,
                                         uint32_t lambda,
                                         double gamma,
                                         double z_re,
                                         double z_im,
                                         double *out);

/**
 * Sweeps the functional over a polar grid: writes the sampled minimum and
 * whether it stays at or above `gamma` (within the verification cushion).
 *
 * # Safety
 * Pointers must be valid.
 */
enum HgftStatus hgft_verify_analytic_condition(const struct HgftFunction *f,
                                               uint32_t k,
                                               uint32_t lambda,
                                               double gamma,
                                               double r_min,
                                               double r_max,
                                               uintptr_t radial_count,
                                               uintptr_t angular_count,
                                               double *out_min,
                                               bool *out_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HGFT_H */
