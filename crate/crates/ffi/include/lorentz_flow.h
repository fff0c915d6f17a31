#ifndef LORENTZ_FLOW_H
#define LORENTZ_FLOW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum LfStatus {
  LF_STATUS_OK = 0,
  LF_STATUS_NULL_POINTER = 1,
  LF_STATUS_INVALID_INPUT = 2,
  LF_STATUS_DEGENERATE = 3,
  LF_STATUS_DOMAIN = 4,
  LF_STATUS_NEAR_SINGULAR_BETA = 5,
  LF_STATUS_STEP_TOO_LARGE = 6,
  LF_STATUS_NOT_UNIMODULAR = 7,
  LF_STATUS_NOT_ORTHOCHRONOUS = 8,
  LF_STATUS_INDEX_OUT_OF_RANGE = 9,
  LF_STATUS_PANIC = 99,
} LfStatus;

typedef enum LfStability {
  LF_STABILITY_ATTRACTIVE = 0,
  LF_STABILITY_REPULSIVE = 1,
  LF_STABILITY_SADDLE = 2,
} LfStability;

typedef enum LfFormat {
  LF_FORMAT_CSV = 0,
  LF_FORMAT_SVG = 1,
} LfFormat;

typedef enum LfSampling {
  LF_SAMPLING_UNIFORM_COS = 0,
  LF_SAMPLING_UNIFORM_THETA = 1,
} LfSampling;

// Opaque handle to an integrated trajectory.
typedef struct LfTrajectory LfTrajectory;

// Row-major `[[a, b], [c, d]]`.
typedef struct LfMatrix {
  double a;
  double b;
  double c;
  double d;
} LfMatrix;

typedef struct LfDecomposition {
  double lambda;
  double theta;
  double tau;
  // True when the input had to be negated to reach `tau` in (-pi, pi].
  bool negated;
} LfDecomposition;

// Result of composing a ẑ-boost `xi` after a boost `eta` along `theta0`.
typedef struct LfComposition {
  double lambda;
  double theta;
  double tau;
  // Resultant direction for the reverse order.
  double phi;
  double beta;
  double invariant;
} LfComposition;

typedef struct LfDerivative {
  double dtheta;
  double dbeta;
  double dtau;
} LfDerivative;

typedef struct LfSample {
  double xi;
  double theta;
  double beta;
  double tau;
  double rapidity;
} LfSample;

typedef struct LfFixedPoint {
  double theta;
  double beta;
  double eigenvalues[2];
  enum LfStability stability;
} LfFixedPoint;

typedef struct LfCollimationSummary {
  double median;
  double mean;
  double fraction_within_inverse_gamma;
  // Fractions of lab angles below 0.01, 0.1 and 0.5 rad.
  double tail_fractions[3];
  double max_route_discrepancy;
} LfCollimationSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null; do not free.
const char *lf_status_message(enum LfStatus status);

// Message of the last failure on this thread, or null if none. The pointer
// stays valid until the next failing call on the same thread; do not free.
const char *lf_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *lf_version(void);

// `exp(-kappa σ_θ / 2)` for a boost of rapidity `kappa` along `theta`.
//
// # Safety
// `out` must be null or valid for writing an `LfMatrix`.
enum LfStatus lf_boost_matrix(double kappa, double theta, struct LfMatrix *out);

// Splits a unimodular matrix into boost × rotation.
//
// # Safety
// `m` must be null or point to a valid `LfMatrix`; `out` must be null or
// valid for writing an `LfDecomposition`.
enum LfStatus lf_decompose(const struct LfMatrix *m, struct LfDecomposition *out);

// Closed-form composition of a ẑ-boost `xi` after a boost `eta` along
// `theta0` (rapidities non-negative, `theta0` in [0, pi]).
//
// # Safety
// `out` must be null or valid for writing an `LfComposition`.
enum LfStatus lf_compose(double xi, double eta, double theta0, struct LfComposition *out);

// Exact Thomas angle; 0 when both rapidities vanish.
//
// # Safety
// `out` must be null or valid for writing an `f64`.
enum LfStatus lf_thomas_angle(double xi, double eta, double theta0, double *out);

// First-order Thomas angle for a small ẑ-boost `dxi`.
double lf_infinitesimal_thomas(double eta, double theta0, double dxi);

// Flow derivatives `d(θ, β, τ)/dξ` at a state. `beta_min <= 0` selects the
// library default.
//
// # Safety
// `out` must be null or valid for writing an `LfDerivative`.
enum LfStatus lf_flow_rhs(double theta,
                          double beta,
                          double tau,
                          double beta_min,
                          struct LfDerivative *out);

// Integrates the flow with RK4 from `(theta0, beta0, tau0)` to `xi_end`.
// On success `*out` owns a new trajectory; free it with
// [`lf_trajectory_free`].
//
// # Safety
// `out` must be null or valid for writing a pointer.
enum LfStatus lf_integrate(double theta0,
                           double beta0,
                           double tau0,
                           double xi_end,
                           double step,
                           struct LfTrajectory **out);

// Number of samples, or 0 for a null handle.
//
// # Safety
// `t` must be null or a live handle from [`lf_integrate`].
uintptr_t lf_trajectory_len(const struct LfTrajectory *t);

// # Safety
// `t` must be null or a live handle from [`lf_integrate`]; `out` must be
// null or valid for writing an `LfSample`.
enum LfStatus lf_trajectory_sample(const struct LfTrajectory *t,
                                   uintptr_t index,
                                   struct LfSample *out);

// Releases a trajectory. Null is ignored.
//
// # Safety
// `t` must be null or a handle from [`lf_integrate`] not already freed.
void lf_trajectory_free(struct LfTrajectory *t);

// Writes the four fixed points of the planar flow into `out[0..4]`.
//
// # Safety
// `out` must be null or valid for writing four `LfFixedPoint`s.
enum LfStatus lf_fixed_points(struct LfFixedPoint *out);

// Renders the default phase portrait. On success `*out` owns a
// NUL-terminated string; free it with [`lf_string_free`].
//
// # Safety
// `out` must be null or valid for writing a pointer.
enum LfStatus lf_render_portrait_default(enum LfFormat format, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not already freed.
void lf_string_free(char *s);

// Monte Carlo collimation of daughters with rest-frame speed
// `daughter_beta` (1 for photons) from a parent of rapidity `xi`.
//
// # Safety
// `out` must be null or valid for writing an `LfCollimationSummary`.
enum LfStatus lf_collimate(double xi,
                           uintptr_t samples,
                           enum LfSampling mode,
                           double daughter_beta,
                           uint64_t seed,
                           struct LfCollimationSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LORENTZ_FLOW_H */
