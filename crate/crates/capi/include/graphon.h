/* C ABI for the graphon library: step kernels, norms, homomorphism densities, inequality checks. */

#ifndef GRAPHON_H
#define GRAPHON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call. Mirrors the CLI exit-code map where
// a category exists there.
typedef enum GraphonStatus {
  GRAPHON_STATUS_OK = 0,
  // A required pointer was null.
  GRAPHON_STATUS_NULL_ARGUMENT = 1,
  // Input failed validation (asymmetry, bad weights, bad range, ...).
  GRAPHON_STATUS_VALIDATION = 2,
  // An iterative solver did not converge.
  GRAPHON_STATUS_NON_CONVERGENCE = 3,
  // The six-inequality check found a violated inequality.
  GRAPHON_STATUS_FALSIFIED = 4,
  // An enumeration budget or exact limit was exceeded.
  GRAPHON_STATUS_BUDGET_EXCEEDED = 5,
  // A string argument was not valid UTF-8.
  GRAPHON_STATUS_UTF8 = 6,
  // JSON parsing or serialization failed.
  GRAPHON_STATUS_JSON = 7,
  // Internal panic; a bug, not a usage error.
  GRAPHON_STATUS_INTERNAL = 8,
} GraphonStatus;

// Opaque step-kernel handle.
typedef struct GraphonKernel GraphonKernel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Most recent error message on this thread, or an empty string. The
// pointer stays valid until the next failing call on the same thread.
const char *graphon_last_error_message(void);

// Free a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must have been returned by a `graphon_*` function and not yet freed.
void graphon_string_free(char *s);

// Build a kernel from a row-major `n × n` value matrix and `n` block
// weights. On success writes a new handle to `out`.
//
// # Safety
// `values` must point to `n * n` doubles, `weights` to `n` doubles, and
// `out` must be a valid pointer.
enum GraphonStatus graphon_kernel_new(const double *values,
                                      const double *weights,
                                      uintptr_t n,
                                      struct GraphonKernel **out);

// Parse a kernel from a JSON document `{"weights": [...], "values": [[...]]}`.
//
// # Safety
// `json` must be a valid NUL-terminated string; `out` must be valid.
enum GraphonStatus graphon_kernel_from_json(const char *json, struct GraphonKernel **out);

// Serialize a kernel to JSON. The returned string is freed with
// [`graphon_string_free`].
//
// # Safety
// `k` must be a live handle; `out_json` must be valid.
enum GraphonStatus graphon_kernel_to_json(const struct GraphonKernel *k, char **out_json);

// Free a kernel handle. Null is a no-op.
//
// # Safety
// `k` must have come from this library and not be freed twice.
void graphon_kernel_free(struct GraphonKernel *k);

// Number of partition blocks, or 0 for a null handle.
//
// # Safety
// `k` must be a live handle or null.
uintptr_t graphon_kernel_block_count(const struct GraphonKernel *k);

// Declared bound `B` with `|values| <= B`, or NaN for a null handle.
//
// # Safety
// `k` must be a live handle or null.
double graphon_kernel_bound(const struct GraphonKernel *k);

// Pointwise evaluation `W(u, v)`.
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_kernel_evaluate(const struct GraphonKernel *k,
                                           double u,
                                           double v,
                                           double *out);

// Exact cut norm (block count must not exceed `exact_limit`; pass 0 for
// the default limit).
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_cut_norm_exact(const struct GraphonKernel *k,
                                          uintptr_t exact_limit,
                                          double *out);

// Certified lower bound on the cut norm by seeded random-restart search.
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_cut_norm_heuristic(const struct GraphonKernel *k,
                                              uint32_t restarts,
                                              uint64_t seed,
                                              double *out);

// Exact ∞,1-operator norm (pass `exact_limit = 0` for the default limit).
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_op_norm_inf1_exact(const struct GraphonKernel *k,
                                              uintptr_t exact_limit,
                                              double *out);

// Certified lower bound on the ∞,1 norm.
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_op_norm_inf1_heuristic(const struct GraphonKernel *k,
                                                  uint32_t restarts,
                                                  uint64_t seed,
                                                  double *out);

// 2,2-operator norm (spectral norm of the weighted operator matrix).
// Pass `tol <= 0` for the default tolerance.
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_op_norm_22(const struct GraphonKernel *k, double tol, double *out);

// Hilbert–Schmidt norm, exact closed form.
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_hs_norm(const struct GraphonKernel *k, double *out);

// Edge density `t(C2, W) = ∫∫W`. Requires a graphon (values in [0,1]).
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_edge_density(const struct GraphonKernel *k, double *out);

// `t(C2, W)`, `‖T_W‖²_HS`, and their gap. Requires a graphon.
//
// # Safety
// `k` must be a live handle; out pointers must be valid.
enum GraphonStatus graphon_errata_gap(const struct GraphonKernel *k,
                                      double *out_t_c2,
                                      double *out_hs_squared,
                                      double *out_gap);

// Exact homomorphism density of a motif given as `vertex_count` and a flat
// `[a0, b0, a1, b1, ...]` edge array of `edge_count` pairs. Requires a
// graphon.
//
// # Safety
// `edges` must point to `2 * edge_count` integers (may be null when
// `edge_count` is 0); `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_hom_density(const struct GraphonKernel *k,
                                       uintptr_t vertex_count,
                                       const uintptr_t *edges,
                                       uintptr_t edge_count,
                                       double *out);

// Cycle density `t(C_k, W)` through the eigenvalues of the weighted
// operator matrix; the independent route to the enumeration above.
//
// # Safety
// `k` must be a live handle; `out` must be valid.
enum GraphonStatus graphon_cycle_density_spectral(const struct GraphonKernel *k,
                                                  uintptr_t cycle_length,
                                                  double *out);

// Run the six-inequality check chain. Writes the six slacks in chain
// order (cut-norm lemma lower/upper, operator-norm lemma lower/upper,
// sandwich lower/upper) and returns `Falsified` if any conclusive
// inequality is violated.
//
// # Safety
// `k` must be a live handle; `out_slacks` must point to 6 doubles.
enum GraphonStatus graphon_check_inequalities(const struct GraphonKernel *k, double *out_slacks);

// Sample a W-random graph into a caller-provided row-major `nodes × nodes`
// 0/1 adjacency buffer. Requires a graphon. Deterministic given the seed.
//
// # Safety
// `k` must be a live handle; `adjacency_out` must point to
// `nodes * nodes` bytes.
enum GraphonStatus graphon_sample_graph(const struct GraphonKernel *k,
                                        uintptr_t nodes,
                                        uint64_t seed,
                                        uint8_t *adjacency_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRAPHON_H */
