#ifndef POLYROT_H
#define POLYROT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define POLYROT_BOUND_COUNT 7

typedef enum PolyrotStatus {
  POLYROT_STATUS_OK = 0,
  POLYROT_STATUS_NULL_POINTER = 1,
  POLYROT_STATUS_INVALID_POLYNOMIAL = 2,
  POLYROT_STATUS_ZERO_PROXIMITY = 3,
  POLYROT_STATUS_NON_CONVERGENCE = 4,
  POLYROT_STATUS_HYPOTHESIS_VIOLATED = 5,
  POLYROT_STATUS_ROOT_AT_ONE = 6,
  POLYROT_STATUS_DEGENERATE_DERIVATIVE = 7,
  POLYROT_STATUS_POLE_ON_CIRCLE = 8,
  POLYROT_STATUS_ARC_CONTAINS_ROOT = 9,
  POLYROT_STATUS_UNWRAP_AMBIGUITY = 10,
  POLYROT_STATUS_INVALID_WITNESS_PARAMS = 11,
  POLYROT_STATUS_INVALID_ARGUMENT = 12,
  POLYROT_STATUS_BUFFER_TOO_SMALL = 13,
  POLYROT_STATUS_PANIC = 14,
} PolyrotStatus;

// Opaque polynomial handle; zone classification is computed once on demand.
typedef struct PolyrotPolynomial PolyrotPolynomial;

// Opaque rational function handle.
typedef struct PolyrotRational PolyrotRational;

typedef struct PolyrotComplex {
  double re;
  double im;
} PolyrotComplex;

// Zero counts by zone.
typedef struct PolyrotZones {
  size_t inside;
  size_t on_circle;
  size_t outside;
  bool all_in_closed_disk;
  bool all_on_circle;
  bool none_inside_open_disk;
} PolyrotZones;

// Bounds in the order classic, coeff, sqrt_weak, value_thm1, coeff2_thm2,
// arc_thm3, upper_zero_free. Not applicable: NaN in `bounds` and `margins`,
// `-1` in `flags`; otherwise `flags` is `1` when the inequality holds.
typedef struct PolyrotBoundReport {
  double theta;
  double lambda;
  double rotation_speed;
  double bounds[POLYROT_BOUND_COUNT];
  double margins[POLYROT_BOUND_COUNT];
  int8_t flags[POLYROT_BOUND_COUNT];
} PolyrotBoundReport;

// Rational check at one point; NaN margin and `-1` flag when not applicable.
typedef struct PolyrotRationalReport {
  double theta;
  double arg_derivative;
  double rhs;
  double lower_margin;
  double upper_margin;
  int8_t lower_holds;
  int8_t upper_holds;
} PolyrotRationalReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (nul-terminated,
// truncated to `len`). Returns the length the full message needs including
// the terminator, or 0 when there is no error.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t polyrot_last_error(char *buf, size_t len);

// Builds a polynomial from `len` coefficients, constant term first.
//
// # Safety
// `coeffs` must point to `len` values; `out` must be writable.
enum PolyrotStatus polyrot_polynomial_new(const struct PolyrotComplex *coeffs,
                                          size_t len,
                                          struct PolyrotPolynomial **out);

// Builds `leading · ∏ (z - roots[k])`.
//
// # Safety
// `roots` must point to `len` values; `out` must be writable.
enum PolyrotStatus polyrot_polynomial_from_roots(struct PolyrotComplex leading,
                                                 const struct PolyrotComplex *roots,
                                                 size_t len,
                                                 struct PolyrotPolynomial **out);

// # Safety
// `p` must be null or a handle from this library, not yet freed.
void polyrot_polynomial_free(struct PolyrotPolynomial *p);

// Degree, or 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t polyrot_polynomial_degree(const struct PolyrotPolynomial *p);

// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_polynomial_eval(const struct PolyrotPolynomial *p,
                                           struct PolyrotComplex z,
                                           struct PolyrotComplex *out);

// `Re(z P'(z) / P(z))` at `z = e^{iθ}`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_rotation_speed(const struct PolyrotPolynomial *p,
                                          double theta,
                                          double *out);

// `Λ = 2 Re(z P'/P) - n` at `z = e^{iθ}`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_lambda(const struct PolyrotPolynomial *p, double theta, double *out);

// `(|c_n| - |c_0|) / (|c_n| + |c_0|)`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_bound_coefficient(const struct PolyrotPolynomial *p, double *out);

// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_bound_sqrt_weak(const struct PolyrotPolynomial *p, double *out);

// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_bound_value_thm1(const struct PolyrotPolynomial *p,
                                            double theta,
                                            double *out);

// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_bound_coeff2_thm2(const struct PolyrotPolynomial *p, double *out);

// `tan(β/2) / tan(α/2)` after checking that the arc of half-width `alpha`
// around `θ` is zero-free and turns by at most `beta`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_bound_arc_thm3(const struct PolyrotPolynomial *p,
                                          double theta,
                                          double alpha,
                                          double beta,
                                          double *out);

// Upper bound on the rotation speed when no zero lies in the open disk.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_upper_bound_zero_free(const struct PolyrotPolynomial *p,
                                                 double theta,
                                                 double *out);

// Central difference of the unwrapped phase with step `h`.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_arg_derivative_fd(const struct PolyrotPolynomial *p,
                                             double theta,
                                             double h,
                                             double *out);

// Sup of `|Δ arg P|` over sub-arcs through the center of the arc, with
// `samples` steps per side (0 selects the default).
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_arc_increment(const struct PolyrotPolynomial *p,
                                         double center,
                                         double half_width,
                                         size_t samples,
                                         double *out);

// Writes all `n` zeros to `buf`. `out_len` receives `n` even when the
// buffer is too small, in which case nothing is written.
//
// # Safety
// `p` must be a live handle, `buf` valid for `cap` values, `out_len` writable.
enum PolyrotStatus polyrot_find_roots(const struct PolyrotPolynomial *p,
                                      struct PolyrotComplex *buf,
                                      size_t cap,
                                      size_t *out_len);

// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_classify(const struct PolyrotPolynomial *p, struct PolyrotZones *out);

// Every applicable bound at `θ`. Pass NaN as `arc_alpha` to skip the arc
// bound.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_full_report(const struct PolyrotPolynomial *p,
                                       double theta,
                                       double arc_alpha,
                                       struct PolyrotBoundReport *out);

// The full report at `θ` as a JSON string; release it with
// [`polyrot_string_free`].
//
// # Safety
// `p` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_report_json(const struct PolyrotPolynomial *p,
                                       double theta,
                                       double arc_alpha,
                                       char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void polyrot_string_free(char *s);

// `P(z) / ∏ (z - poles[k])` with every pole outside the closed disk.
//
// # Safety
// `numerator` and `poles` must point to their lengths; `out` writable.
enum PolyrotStatus polyrot_rational_new(const struct PolyrotComplex *numerator,
                                        size_t numerator_len,
                                        const struct PolyrotComplex *poles,
                                        size_t poles_len,
                                        struct PolyrotRational **out);

// # Safety
// `r` must be null or a handle from this library, not yet freed.
void polyrot_rational_free(struct PolyrotRational *r);

// Lower and upper rotation bounds for the rational function at `θ`.
//
// # Safety
// `r` must be a live handle and `out` writable.
enum PolyrotStatus polyrot_rational_check(const struct PolyrotRational *r,
                                          double theta,
                                          double tolerance,
                                          struct PolyrotRationalReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYROT_H */
