#ifndef RGT_H
#define RGT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Route codes accepted by `rgt_transform`.
typedef enum RgtMethod {
  RGT_METHOD_DIRECT = 0,
  RGT_METHOD_CLOSED = 1,
  RGT_METHOD_STRIP = 2,
  RGT_METHOD_CONTINUATION = 3,
  RGT_METHOD_AUTO = 4,
} RgtMethod;

typedef enum RgtStatus {
  RGT_STATUS_OK = 0,
  // Null pointer or malformed argument (bad method code, bad tolerance).
  RGT_STATUS_INVALID_ARGUMENT = 1,
  // Parameter outside the domain of the requested route.
  RGT_STATUS_DOMAIN = 2,
  // Gamma argument at a pole.
  RGT_STATUS_POLE = 3,
  RGT_STATUS_NON_CONVERGENCE = 4,
  // Continuation deeper than supported.
  RGT_STATUS_DEPTH_EXCEEDED = 5,
  RGT_STATUS_EXTRAPOLATION_UNSTABLE = 6,
  // A Rust panic was caught at the boundary.
  RGT_STATUS_INTERNAL = 7,
} RgtStatus;

// Opaque handle.
typedef struct RgtContext RgtContext;

typedef struct RgtComplex {
  double re;
  double im;
} RgtComplex;

typedef struct RgtResult {
  struct RgtComplex value;
  double err_estimate;
  uint64_t evaluations;
  // Route actually taken (never `Auto`), as an `RgtMethod` code.
  int32_t method;
  // -1 for Re(a) > 0, otherwise k with -k-1 < Re(a) < -k.
  int32_t strip;
} RgtResult;

typedef struct RgtJump {
  struct RgtComplex extrapolated;
  struct RgtComplex closed_form;
  double discrepancy;
  struct RgtComplex i_extrapolated;
  struct RgtComplex i_closed_form;
  double i_discrepancy;
} RgtJump;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a context with default tolerances. Free with `rgt_context_free`.
struct RgtContext *rgt_context_new(void);

// # Safety
// `ctx` must be null or a pointer from `rgt_context_new` not yet freed.
void rgt_context_free(struct RgtContext *ctx);

// Replaces the quadrature tolerances; the context is unchanged on error.
//
// # Safety
// `ctx` must be valid.
enum RgtStatus rgt_context_set_tolerances(struct RgtContext *ctx,
                                          double abs_tol,
                                          double rel_tol,
                                          uint64_t max_subdivisions,
                                          double truncation_tail_tol);

// Message for the last failed call on `ctx`; empty after a success. The
// pointer stays valid until the next call on `ctx`.
//
// # Safety
// `ctx` must be null or valid.
const char *rgt_last_error(const struct RgtContext *ctx);

// Static description of an `RgtStatus` code.
const char *rgt_status_str(int32_t status);

// J(a, ξ) by the route `method` (an `RgtMethod` code).
//
// # Safety
// `ctx` must be valid and `out` null or writable.
enum RgtStatus rgt_transform(struct RgtContext *ctx,
                             struct RgtComplex a,
                             double xi,
                             int32_t method,
                             struct RgtResult *out);

// I(a, ξ) = a·J(a, ξ) by the automatic route.
//
// # Safety
// `ctx` must be valid and `out` null or writable.
enum RgtStatus rgt_i_transform(struct RgtContext *ctx,
                               struct RgtComplex a,
                               double xi,
                               struct RgtResult *out);

// # Safety
// `ctx` must be valid and `out` null or writable.
enum RgtStatus rgt_gamma(struct RgtContext *ctx, struct RgtComplex z, struct RgtComplex *out);

// # Safety
// `ctx` must be valid and `out` null or writable.
enum RgtStatus rgt_beta(struct RgtContext *ctx,
                        struct RgtComplex p,
                        struct RgtComplex q,
                        struct RgtComplex *out);

// 4π cosh(pξ) Γ(2p) for purely imaginary p ≠ 0.
//
// # Safety
// `ctx` must be valid and `out` null or writable.
enum RgtStatus rgt_jump_closed_form(struct RgtContext *ctx,
                                    struct RgtComplex p,
                                    double xi,
                                    struct RgtComplex *out);

// Two-sided jump estimate. Pass `deltas = NULL, n_deltas = 0` for the
// defaults.
//
// # Safety
// `ctx` must be valid, `deltas` readable for `n_deltas` values (or null with
// `n_deltas == 0`), and `out` null or writable.
enum RgtStatus rgt_jump_estimate(struct RgtContext *ctx,
                                 struct RgtComplex p,
                                 double xi,
                                 const double *deltas,
                                 size_t n_deltas,
                                 struct RgtJump *out);

// Relative residual of the second-order ODE linking I(a, ·) and I(a+1, ·),
// with a central difference of step `h`.
//
// # Safety
// `ctx` must be valid and `out` null or writable.
enum RgtStatus rgt_ode_residual(struct RgtContext *ctx,
                                struct RgtComplex a,
                                double xi,
                                double h,
                                double *out);

// Library version, static string.
const char *rgt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RGT_H */
