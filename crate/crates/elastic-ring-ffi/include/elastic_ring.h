#ifndef ELASTIC_RING_H
#define ELASTIC_RING_H

/* Generated by cbindgen from elastic-ring-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every API function.
typedef enum ErStatus {
  // Success.
  ER_OK = 0,
  // A parameter is outside its admissible range.
  ER_INVALID_PARAMETER = 1,
  // No bifurcation exists at the requested parameters.
  ER_NO_BIFURCATION = 2,
  // An iterative solve failed to converge.
  ER_DIVERGED = 3,
  // A root or minimum was not bracketed / does not exist.
  ER_NO_BRACKET = 4,
  // The transition at these parameters is not first-order.
  ER_NOT_FIRST_ORDER = 5,
  // The reduced polynomial is not finitely determined at this order.
  ER_INDETERMINATE = 6,
  // A required pointer argument was null.
  ER_NULL_POINTER = 7,
  // Internal error (panic caught at the ABI boundary).
  ER_INTERNAL = 8,
} ErStatus;

// Opaque handle to an engine reduction at one parameter point.
typedef struct ErReduction ErReduction;

// Opaque buckled-shape handle (sampled centerline polygon).
typedef struct ErShape ErShape;

// Landau coefficients of the reduced potential
// g(α) = a2·α² + a4·α⁴ + a6·α⁶.
typedef struct ErLandau {
  double a2;
  double a4;
  double a6;
  // Degree (2, 4 or 6) of the first non-vanishing coefficient.
  uint32_t determinacy;
} ErLandau;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *er_strerror(enum ErStatus status);

// Critical μ2 on the mode-n bifurcation curve at the given μ1.
enum ErStatus er_critical_mu2(uint32_t n, double mu1, double *out_mu2);

// Critical dimensionless pressure μ1μ2/(4π²) in the inextensible limit
// μ1 → 0 (equals n² − 1).
double er_inextensible_limit(uint32_t n);

// The tricritical point (first-/second-order boundary) on the n = 2
// curve.
enum ErStatus er_tricritical_point(double *out_mu1, double *out_mu2);

// Closed-form Landau coefficients at (μ1, μ2).
enum ErStatus er_landau_closed_form(double mu1, double mu2, struct ErLandau *out);

// Global minimum of g over α ≥ 0 (α = 0 when the circular state wins;
// exact ties resolve to the buckled well).
enum ErStatus er_minimize(const struct ErLandau *poly, double *out_alpha, double *out_g);

// μ1 where the circular state loses linear stability (a2 = 0) at
// fixed μ2.
enum ErStatus er_stability_boundary(double mu2, double *out_mu1);

// Maxwell (equal-depth) pressure parameter at fixed μ2; fails with
// `ER_NOT_FIRST_ORDER` on the second-order side of the tricritical
// point.
enum ErStatus er_maxwell_mu1(double mu2, double *out_mu1);

// Spinodal window [lo, hi] of μ1 bounding the hysteresis region at
// fixed μ2.
enum ErStatus er_spinodal_bounds(double mu2, double *out_mu1_lo, double *out_mu1_hi);

// Closed-form area enclosed by the buckled ring of contour length
// `length` at amplitude α (valid through O(α²)).
enum ErStatus er_enclosed_area(double mu1, double alpha, double length, double *out_area);

// Sample the asymptotic post-buckling shape at (μ1, α). On success the
// handle must be released with `er_shape_free`.
enum ErStatus er_shape_new(double mu1, double alpha, size_t samples, struct ErShape **out);

// Number of samples held by the shape (0 for a null handle).
size_t er_shape_len(const struct ErShape *shape);

// The i-th sample as (arclength, x, y).
enum ErStatus er_shape_point(const struct ErShape *shape,
                             size_t index,
                             double *out_s,
                             double *out_x,
                             double *out_y);

// Polygonal (shoelace) area enclosed by the sampled shape; NaN for a
// null handle.
double er_shape_area(const struct ErShape *shape);

// Release a shape handle (null is a no-op).
void er_shape_free(struct ErShape *shape);

// Run the numerical splitting-lemma reduction of the ring energy at
// (μ1, μ2) with `num_modes` Fourier harmonics (pass 0 for the default
// of 12). On success the handle must be released with
// `er_reduction_free`.
enum ErStatus er_reduce(double mu1, double mu2, size_t num_modes, struct ErReduction **out);

// Fitted Landau coefficients of a reduction.
enum ErStatus er_reduction_landau(const struct ErReduction *reduction, struct ErLandau *out);

// μ2 of the critical point where the slaving jets were extracted.
double er_reduction_mu2_critical(const struct ErReduction *reduction);

// Copy the kernel mode into `out` (capacity `len`); writes the needed
// length through `out_len` and fails with `ER_INVALID_PARAMETER` if
// the buffer is too small (call with `len = 0` to query the size).
enum ErStatus er_reduction_kernel(const struct ErReduction *reduction,
                                  double *out,
                                  size_t len,
                                  size_t *out_len);

// Release a reduction handle (null is a no-op).
void er_reduction_free(struct ErReduction *reduction);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELASTIC_RING_H */
