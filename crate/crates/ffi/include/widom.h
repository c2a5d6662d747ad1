/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef WIDOM_H
#define WIDOM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WidomClassification {
  WIDOM_CLASSIFICATION_INCREASING = 0,
  WIDOM_CLASSIFICATION_DECREASING = 1,
  WIDOM_CLASSIFICATION_CONSTANT = 2,
  WIDOM_CLASSIFICATION_NON_MONOTONE = 3,
} WidomClassification;

typedef enum WidomStatus {
  WIDOM_STATUS_OK = 0,
  WIDOM_STATUS_NULL_POINTER = 1,
  WIDOM_STATUS_DOMAIN = 2,
  WIDOM_STATUS_NON_CONVERGENCE = 3,
  WIDOM_STATUS_DEGENERATE = 4,
  WIDOM_STATUS_EXCHANGE_FAILURE = 5,
  WIDOM_STATUS_ROOT_FAILURE = 6,
  WIDOM_STATUS_BUFFER_TOO_SMALL = 7,
  WIDOM_STATUS_PROPERTY_VIOLATION = 8,
  WIDOM_STATUS_PANIC = 9,
} WidomStatus;

/**
 * Opaque handle to a solved weighted Chebyshev problem.
 */
typedef struct WidomSolution WidomSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into this library from the same thread.
 */
const char *widom_last_error(void);

/**
 * Solves with default options (tolerance 1e-12, 60 iterations, grid factor 30).
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum WidomStatus widom_solve(double rho_a,
                             double rho_b,
                             uintptr_t degree,
                             struct WidomSolution **out);

/**
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum WidomStatus widom_solve_with(double rho_a,
                                  double rho_b,
                                  uintptr_t degree,
                                  double tolerance,
                                  uintptr_t max_iter,
                                  uintptr_t grid_factor,
                                  struct WidomSolution **out);

/**
 * # Safety
 * `sol` must be null or a handle from `widom_solve*` not yet freed.
 */
void widom_solution_free(struct WidomSolution *sol);

/**
 * Degree of the solution; 0 for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
uintptr_t widom_solution_degree(const struct WidomSolution *sol);

/**
 * `max |w p|`; NaN for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
double widom_solution_norm(const struct WidomSolution *sol);

/**
 * `2ⁿ · norm`; NaN for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
double widom_solution_widom(const struct WidomSolution *sol);

/**
 * Relative levelling defect; NaN for a null handle.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
double widom_solution_defect(const struct WidomSolution *sol);

/**
 * Writes the `degree` roots, increasing.
 *
 * # Safety
 * `buf` must be valid for `len` writes; `sol` a live handle.
 */
enum WidomStatus widom_solution_roots(const struct WidomSolution *sol, double *buf, uintptr_t len);

/**
 * Writes the `degree + 1` alternation points, increasing.
 *
 * # Safety
 * `buf` must be valid for `len` writes; `sol` a live handle.
 */
enum WidomStatus widom_solution_reference(const struct WidomSolution *sol,
                                          double *buf,
                                          uintptr_t len);

/**
 * Writes the `degree + 1` power-basis coefficients, ascending.
 *
 * # Safety
 * `buf` must be valid for `len` writes; `sol` a live handle.
 */
enum WidomStatus widom_solution_coefficients(const struct WidomSolution *sol,
                                             double *buf,
                                             uintptr_t len);

/**
 * `W_n(ρα, ρβ)`.
 *
 * # Safety
 * `out` must be null or valid for one write.
 */
enum WidomStatus widom_widom_factor(double rho_a, double rho_b, uintptr_t n, double *out);

/**
 * The upper bound `M_n(α, β)` for `α, β ∈ [-1/2, 1/2]`.
 *
 * # Safety
 * `out` must be null or valid for one write.
 */
enum WidomStatus widom_m_bound(double alpha, double beta, uintptr_t n, double *out);

/**
 * `2^{1-ρα-ρβ}`; NaN for invalid exponents.
 */
double widom_asymptote(double rho_a, double rho_b);

/**
 * Maximum of the weight on `[-1, 1]`; NaN for invalid exponents.
 */
double widom_weight_sup_bound(double rho_a, double rho_b);

/**
 * Classifies `len` values with relative tolerance `tol`.
 *
 * # Safety
 * `values` must be valid for `len` reads and `out` for one write.
 */
enum WidomStatus widom_classify(const double *values,
                                uintptr_t len,
                                double tol,
                                enum WidomClassification *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WIDOM_H */
