#ifndef RELLICH_H
#define RELLICH_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RellichBranch {
  RELLICH_BRANCH_MINUS = 0,
  RELLICH_BRANCH_PLUS = 1,
  RELLICH_BRANCH_BOUNDARY_OBSTRUCTION = 2,
} RellichBranch;

typedef enum RellichDomain {
  RELLICH_DOMAIN_WHOLE_SPACE = 0,
  RELLICH_DOMAIN_UNIT_BALL = 1,
  RELLICH_DOMAIN_BOUNDED_SMOOTH = 2,
  RELLICH_DOMAIN_EXTERIOR_SMOOTH = 3,
  RELLICH_DOMAIN_EXTERIOR_BALL = 4,
} RellichDomain;

typedef enum RellichInterval {
  RELLICH_INTERVAL_HALF_LINE = 0,
  RELLICH_INTERVAL_UNIT_INTERVAL = 1,
} RellichInterval;

typedef enum RellichStatus {
  RELLICH_STATUS_OK = 0,
  RELLICH_STATUS_NULL_POINTER = 1,
  RELLICH_STATUS_INVALID_PARAMETER = 2,
  RELLICH_STATUS_PRECONDITION_VIOLATED = 3,
  RELLICH_STATUS_UNSUPPORTED_REGIME = 4,
  RELLICH_STATUS_OUT_OF_RANGE = 5,
  RELLICH_STATUS_NUMERICAL_FAILURE = 6,
  RELLICH_STATUS_CORPUS_OUTSIDE_SUBSPACE = 7,
  RELLICH_STATUS_INVALID_UTF8 = 8,
  RELLICH_STATUS_PANIC = 9,
} RellichStatus;

// Set of spherical-harmonic degrees.
typedef struct RellichHarmonicSet RellichHarmonicSet;

// Operator coefficients `(N, c, b)`.
typedef struct RellichParams RellichParams;

// Compactly supported one-dimensional profile.
typedef struct RellichProfile RellichProfile;

// Numerical verification report.
typedef struct RellichReport RellichReport;

// Outcome of a decision.
typedef struct RellichVerdict RellichVerdict;

typedef struct RellichFailingMode {
  uint32_t n;
  enum RellichBranch branch;
  double critical_alpha;
} RellichFailingMode;

typedef struct RellichSpectralFlags {
  bool in_spectrum;
  bool in_approx;
  bool in_point_certified;
  bool in_residual_not_approx;
} RellichSpectralFlags;

// `double f(double s, void *user_data)`; NULL is rejected.
typedef double (*RellichScalarCallback)(double, void*);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the next
// call into this library on the same thread.
const char *rellich_last_error_message(void);

// Releases a string returned by a `_to_json` function.
//
// # Safety
// `s` must come from this library and not be freed twice.
void rellich_string_free(char *s);

// # Safety
// `out` must be a valid pointer.
enum RellichStatus rellich_params_new(uint32_t dim, double c, double b, struct RellichParams **out);

// # Safety
// `params` must come from [`rellich_params_new`] or be NULL.
void rellich_params_free(struct RellichParams *params);

// `D = b + ((N − 2 + c)/2)²`; NaN when `params` is NULL.
//
// # Safety
// `params` must be a valid handle or NULL.
double rellich_discriminant(const struct RellichParams *params);

// # Safety
// Pointers must be valid.
enum RellichStatus rellich_base_alpha(const struct RellichParams *params, double p, double *out);

// Critical exponents `α_n^−` and `α_n^+`.
//
// # Safety
// Pointers must be valid.
enum RellichStatus rellich_critical_alphas(const struct RellichParams *params,
                                           double p,
                                           uint32_t n,
                                           double *out_minus,
                                           double *out_plus);

// Best constant `b + γ_p(α, c)`; `*out_available` is false outside its range.
//
// # Safety
// Pointers must be valid.
enum RellichStatus rellich_best_constant(const struct RellichParams *params,
                                         double p,
                                         double alpha,
                                         double *out,
                                         bool *out_available);

// Parses `all`, `ge:N`, `set:a,b,...` or `ne:a,b,...`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum RellichStatus rellich_harmonic_set_parse(const char *text, struct RellichHarmonicSet **out);

// # Safety
// `set` must come from [`rellich_harmonic_set_parse`] or be NULL.
void rellich_harmonic_set_free(struct RellichHarmonicSet *set);

// Decides the inequality. `set` may be NULL for all degrees.
//
// # Safety
// Pointers must be valid; `set` may be NULL.
enum RellichStatus rellich_decide(const struct RellichParams *params,
                                  double p,
                                  double alpha,
                                  enum RellichDomain domain,
                                  const struct RellichHarmonicSet *set,
                                  double tol,
                                  struct RellichVerdict **out);

// # Safety
// `verdict` must come from [`rellich_decide`] or be NULL.
void rellich_verdict_free(struct RellichVerdict *verdict);

// # Safety
// `verdict` must be a valid handle or NULL (returns false).
bool rellich_verdict_holds(const struct RellichVerdict *verdict);

// Writes the best constant and returns true when the verdict carries one.
//
// # Safety
// `verdict` must be a valid handle or NULL; `out` may be NULL.
bool rellich_verdict_best_constant(const struct RellichVerdict *verdict, double *out);

// # Safety
// `verdict` must be a valid handle or NULL (returns 0).
size_t rellich_verdict_failing_mode_count(const struct RellichVerdict *verdict);

// # Safety
// Pointers must be valid.
enum RellichStatus rellich_verdict_failing_mode(const struct RellichVerdict *verdict,
                                                size_t i,
                                                struct RellichFailingMode *out);

// JSON form of the verdict, released with [`rellich_string_free`]; NULL on error.
//
// # Safety
// `verdict` must be a valid handle or NULL.
char *rellich_verdict_to_json(const struct RellichVerdict *verdict);

// Spectral classification of `λ = re + i·im` for `A` on the whole space or unit ball.
//
// # Safety
// Pointers must be valid; `set` may be NULL for all degrees.
enum RellichStatus rellich_classify_a(const struct RellichParams *params,
                                      double p,
                                      const struct RellichHarmonicSet *set,
                                      enum RellichDomain domain,
                                      double re,
                                      double im,
                                      struct RellichSpectralFlags *out);

// Spectral classification for the radial operator on an interval.
//
// # Safety
// Pointers must be valid.
enum RellichStatus rellich_classify_gamma(const struct RellichParams *params,
                                          double p,
                                          enum RellichInterval interval,
                                          double re,
                                          double im,
                                          struct RellichSpectralFlags *out);

// `(1 − t²)³` rescaled to `[a, b]`.
//
// # Safety
// `out` must be a valid pointer.
enum RellichStatus rellich_profile_bump(double a, double b, struct RellichProfile **out);

// Profile given by `v`, `v′`, `v″` callbacks with support `[a, b]`. The
// callbacks must be thread-safe and `user_data` must outlive the profile.
//
// # Safety
// Callbacks must be valid function pointers; `out` must be a valid pointer.
enum RellichStatus rellich_profile_from_callbacks(RellichScalarCallback value,
                                                  RellichScalarCallback d1,
                                                  RellichScalarCallback d2,
                                                  void *user_data,
                                                  double a,
                                                  double b,
                                                  struct RellichProfile **out);

// # Safety
// `profile` must come from this library or be NULL.
void rellich_profile_free(struct RellichProfile *profile);

// Ratio of the counterexample family at parameter `eps`.
//
// # Safety
// Pointers must be valid.
enum RellichStatus rellich_counterexample_ratio(const struct RellichParams *params,
                                                double p,
                                                uint32_t n,
                                                enum RellichBranch branch,
                                                double eps,
                                                double *out);

// Verifies the inequality on `len` separable functions `(degrees[i], profiles[i])`.
//
// # Safety
// Arrays must hold `len` valid entries; `set` may be NULL for all degrees.
enum RellichStatus rellich_verify_rellich(const struct RellichParams *params,
                                          double p,
                                          double alpha,
                                          enum RellichDomain domain,
                                          const struct RellichHarmonicSet *set,
                                          const uint32_t *degrees,
                                          const struct RellichProfile *const *profiles,
                                          size_t len,
                                          struct RellichReport **out);

// Weighted Hardy inequality for a radial profile in `r`.
//
// # Safety
// Pointers must be valid.
enum RellichStatus rellich_verify_hardy(uint32_t dim,
                                        double p,
                                        double beta,
                                        const struct RellichProfile *profile,
                                        struct RellichReport **out);

// # Safety
// `report` must be a valid handle or NULL (returns false).
bool rellich_report_passed(const struct RellichReport *report);

// # Safety
// `report` must be a valid handle or NULL (returns NaN).
double rellich_report_min_margin(const struct RellichReport *report);

// JSON form of the report, released with [`rellich_string_free`]; NULL on error.
//
// # Safety
// `report` must be a valid handle or NULL.
char *rellich_report_to_json(const struct RellichReport *report);

// # Safety
// `report` must come from this library or be NULL.
void rellich_report_free(struct RellichReport *report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* RELLICH_H */
