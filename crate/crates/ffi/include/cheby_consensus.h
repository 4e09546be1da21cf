#ifndef CHEBY_CONSENSUS_H
#define CHEBY_CONSENSUS_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_ARGUMENT = 2,
  CC_STATUS_INVALID_PARAMS = 3,
  CC_STATUS_GENERATION_FAILED = 4,
  CC_STATUS_DISCONNECTED = 5,
  CC_STATUS_NOT_SYMMETRIC = 6,
  CC_STATUS_EIGEN_FAILURE = 7,
  CC_STATUS_DEGENERATE_SPECTRUM = 8,
  CC_STATUS_UNSUPPORTED = 9,
  CC_STATUS_IO = 10,
  CC_STATUS_PANIC = 11,
} CcStatus;

typedef enum CcWeightKind {
  CC_WEIGHT_KIND_LOCAL_DEGREE = 0,
  CC_WEIGHT_KIND_BEST_CONSTANT = 1,
  CC_WEIGHT_KIND_NON_SYMMETRIC = 2,
} CcWeightKind;

typedef enum CcMethod {
  CC_METHOD_CHEBYSHEV = 0,
  CC_METHOD_POWER = 1,
  CC_METHOD_NEWTON2 = 2,
  CC_METHOD_FIXED_GAIN = 3,
} CcMethod;

typedef enum CcScenario {
  CC_SCENARIO_FIXED = 0,
  CC_SCENARIO_LINK_FAILURE = 1,
  CC_SCENARIO_MOTION = 2,
  CC_SCENARIO_RANDOM_NETWORK = 3,
  CC_SCENARIO_ADDED_LINKS = 4,
} CcScenario;

// Opaque communication graph.
typedef struct CcGraph CcGraph;

// Opaque run record.
typedef struct CcTrace CcTrace;

// Opaque weight matrix.
typedef struct CcWeights CcWeights;

// Iteration and its parameters.
//
// With `tuned` set, parameters come from the spectrum of the weight matrix
// and `a`, `b` are ignored. Otherwise Chebyshev reads `a = lambda_m`,
// `b = lambda_M`; Newton reads `a = alpha`; fixed gain reads `a = beta`.
typedef struct CcMethodSpec {
  enum CcMethod method;
  bool tuned;
  double a;
  double b;
} CcMethodSpec;

// Topology evolution for switching runs.
typedef struct CcScenarioSpec {
  enum CcScenario kind;
  double failure_prob;
  double add_prob;
  double step_size;
  double side;
  double radius;
  uint64_t seed;
} CcScenarioSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *cc_last_error(void);

// Library version as a static NUL-terminated string.
const char *cc_version(void);

// Chebyshev polynomial of the first kind, `T_n(x)`.
double cc_chebyshev_t(size_t n, double x);

// Smaller-modulus root of `t^2 - 2 x t + 1` for real `|x| > 1`.
//
// # Safety
// `result` must be a valid pointer to a double.
enum CcStatus cc_tau(double x, double *result);

// `x + sqrt(x^2 + 1)` for `x >= 0`.
//
// # Safety
// `result` must be a valid pointer to a double.
enum CcStatus cc_kappa1(double x, double *result);

// Asymptotic contraction per round of the Chebyshev iteration on
// `[lambda_m, lambda_max]` for a spectrum with extremes `lambda_2`, `lambda_n`.
//
// # Safety
// `result` must be a valid pointer to a double.
enum CcStatus cc_conv_factor(double lambda_m,
                             double lambda_max,
                             double lambda_2,
                             double lambda_n,
                             double *result);

// Switching-topology sufficient condition for interval
// `[lambda_m, lambda_max]` against the envelope `[env_min, env_max]`.
// `pass` receives 1 when the condition holds.
//
// # Safety
// `product` and `pass` must be valid pointers.
enum CcStatus cc_check_switching(double lambda_m,
                                 double lambda_max,
                                 double env_max,
                                 double env_min,
                                 double *product,
                                 int *pass);

// Connected random geometric graph in a `side` x `side` square.
//
// # Safety
// `graph` must be a valid pointer; on success it receives a handle to free
// with [`cc_graph_free`].
enum CcStatus cc_graph_random_geometric(size_t n,
                                        double side,
                                        double radius,
                                        uint64_t seed,
                                        struct CcGraph **graph);

// Graph from `n_edges` node pairs stored flat in `pairs` (`2 * n_edges`
// entries).
//
// # Safety
// `pairs` must point to `2 * n_edges` values (may be NULL when `n_edges` is
// 0); `graph` must be a valid pointer.
enum CcStatus cc_graph_from_edges(size_t n,
                                  const size_t *pairs,
                                  size_t n_edges,
                                  struct CcGraph **graph);

// Number of nodes, or 0 for a NULL handle.
//
// # Safety
// `graph` must be NULL or a live handle.
size_t cc_graph_n_nodes(const struct CcGraph *graph);

// Number of undirected edges, or 0 for a NULL handle.
//
// # Safety
// `graph` must be NULL or a live handle.
size_t cc_graph_n_edges(const struct CcGraph *graph);

// 1 if the graph is connected, 0 otherwise or for NULL.
//
// # Safety
// `graph` must be NULL or a live handle.
int cc_graph_is_connected(const struct CcGraph *graph);

// # Safety
// `graph` must be NULL or a handle not yet freed.
void cc_graph_free(struct CcGraph *graph);

// Weight matrix of the given kind for `graph`.
//
// # Safety
// `graph` must be a live handle and `weights` a valid pointer; on success it
// receives a handle to free with [`cc_weights_free`].
enum CcStatus cc_weights_new(const struct CcGraph *graph,
                             enum CcWeightKind kind,
                             struct CcWeights **weights);

// Weight matrix from `n * n` row-major entries, which must be non-negative
// with unit row sums.
//
// # Safety
// `entries` must point to `n * n` doubles and `weights` be a valid pointer.
enum CcStatus cc_weights_from_dense(size_t n, const double *entries, struct CcWeights **weights);

// Dimension, or 0 for NULL.
//
// # Safety
// `weights` must be NULL or a live handle.
size_t cc_weights_n(const struct CcWeights *weights);

// Entry `(i, j)`.
//
// # Safety
// `weights` must be a live handle and `value` a valid pointer.
enum CcStatus cc_weights_get(const struct CcWeights *weights, size_t i, size_t j, double *value);

// # Safety
// `weights` must be NULL or a handle not yet freed.
void cc_weights_free(struct CcWeights *weights);

// Second-largest and smallest real eigenvalues of the weight matrix.
//
// # Safety
// `weights` must be a live handle; `lambda_2` and `lambda_n` valid pointers.
enum CcStatus cc_spectrum_extremes(const struct CcWeights *weights,
                                   double *lambda_2,
                                   double *lambda_n);

// Runs an iteration on a fixed weight matrix until the error drops below
// `tol` or `max_rounds` pass.
//
// # Safety
// `weights` and `spec` must be valid; `x0` must point to `n` doubles where
// `n` is the matrix dimension; `trace` must be a valid pointer and on success
// receives a handle to free with [`cc_trace_free`].
enum CcStatus cc_run(const struct CcWeights *weights,
                     const struct CcMethodSpec *spec,
                     const double *x0,
                     size_t n,
                     double tol,
                     size_t max_rounds,
                     struct CcTrace **trace);

// Runs an iteration over a switching topology that starts from `graph`.
// Tuned parameters come from the base graph's weight matrix; Newton is not
// available here.
//
// # Safety
// As for [`cc_run`], with `graph` and `scenario` valid.
enum CcStatus cc_run_switching(const struct CcGraph *graph,
                               const struct CcScenarioSpec *scenario,
                               enum CcWeightKind kind,
                               const struct CcMethodSpec *spec,
                               const double *x0,
                               size_t n,
                               double tol,
                               size_t max_rounds,
                               struct CcTrace **trace);

// Rounds performed, or 0 for NULL.
//
// # Safety
// `trace` must be NULL or a live handle.
size_t cc_trace_rounds(const struct CcTrace *trace);

// Round at which the tolerance was first met; `reached` receives 0 when it
// never was.
//
// # Safety
// `trace` must be a live handle; `round` and `reached` valid pointers.
enum CcStatus cc_trace_rounds_to_tol(const struct CcTrace *trace, size_t *round, int *reached);

// 1 if the run was stopped by divergence.
//
// # Safety
// `trace` must be NULL or a live handle.
int cc_trace_diverged(const struct CcTrace *trace);

// Value the states converge to, or NaN for NULL.
//
// # Safety
// `trace` must be NULL or a live handle.
double cc_trace_consensus_value(const struct CcTrace *trace);

// Copies up to `len` per-round errors (round 1 first) into `buf` and
// returns the total number available.
//
// # Safety
// `trace` must be NULL or a live handle; `buf` must hold `len` doubles.
size_t cc_trace_errors(const struct CcTrace *trace, double *buf, size_t len);

// Copies up to `len` entries of the final state into `buf` and returns the
// state length.
//
// # Safety
// `trace` must be NULL or a live handle; `buf` must hold `len` doubles.
size_t cc_trace_final_state(const struct CcTrace *trace, double *buf, size_t len);

// # Safety
// `trace` must be NULL or a handle not yet freed.
void cc_trace_free(struct CcTrace *trace);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEBY_CONSENSUS_H */
