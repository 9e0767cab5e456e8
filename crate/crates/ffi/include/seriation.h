#ifndef SERIATION_H
#define SERIATION_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SeriationStatus {
  SERIATION_STATUS_OK = 0,
  /**
   * Invalid argument or parameter.
   */
  SERIATION_STATUS_INVALID = 2,
  /**
   * Malformed input text or an I/O failure.
   */
  SERIATION_STATUS_PARSE = 3,
  /**
   * Too few subsamples were recognised within the attempt budget.
   */
  SERIATION_STATUS_BUDGET_EXHAUSTED = 4,
  SERIATION_STATUS_NULL_POINTER = 5,
  /**
   * An internal panic was caught at the boundary.
   */
  SERIATION_STATUS_PANIC = 6,
} SeriationStatus;

/**
 * Opaque graph handle.
 */
typedef struct SeriationGraph SeriationGraph;

/**
 * Opaque ordering handle.
 */
typedef struct SeriationOrdering SeriationOrdering;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *seriation_last_error(void);

/**
 * Builds a graph from `m` edges `(us[k], vs[k])`.
 *
 * # Safety
 * `us` and `vs` must point to `m` readable elements (may be NULL when
 * `m == 0`); `out` must be writable.
 */
enum SeriationStatus seriation_graph_from_edges(size_t n,
                                                const size_t *us,
                                                const size_t *vs,
                                                size_t m,
                                                struct SeriationGraph **out);

/**
 * Samples a graph on `n` vertices from a graphon description such as
 * `"step:p=0.8,q=0.1,d=0.2"` or its JSON form. When `latents` is not NULL it
 * receives the `n` latent positions.
 *
 * # Safety
 * `graphon` must be a NUL-terminated string; `latents` NULL or writable for
 * `n` doubles; `out` writable.
 */
enum SeriationStatus seriation_graph_sample(const char *graphon,
                                            size_t n,
                                            uint64_t seed,
                                            double *latents,
                                            struct SeriationGraph **out);

/**
 * # Safety
 * `g` must be NULL or a handle from this library not yet freed.
 */
void seriation_graph_free(struct SeriationGraph *g);

/**
 * # Safety
 * `g` must be a live graph handle and `n` writable.
 */
enum SeriationStatus seriation_graph_size(const struct SeriationGraph *g, size_t *n, size_t *edges);

/**
 * Coarse ordering with the default desk-scale parameters.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum SeriationStatus seriation_main_estimate(const struct SeriationGraph *g,
                                             double alpha,
                                             uint64_t seed,
                                             struct SeriationOrdering **out);

/**
 * Coarse ordering on a sample followed by refinement to all vertices.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum SeriationStatus seriation_iterative_estimate(const struct SeriationGraph *g,
                                                  double alpha,
                                                  double epsilon,
                                                  uint64_t seed,
                                                  struct SeriationOrdering **out);

/**
 * Copies the 1-based rank of each vertex into `ranks` (length `len`, which
 * must equal the ordering size).
 *
 * # Safety
 * `o` must be a live ordering handle; `ranks` writable for `len` elements.
 */
enum SeriationStatus seriation_ordering_ranks(const struct SeriationOrdering *o,
                                              size_t *ranks,
                                              size_t len);

/**
 * # Safety
 * `o` must be NULL or a handle from this library not yet freed.
 */
void seriation_ordering_free(struct SeriationOrdering *o);

/**
 * Ordering error of 1-based `ranks` against `latents`, both of length `n`,
 * minimised over the latent order and its reversal.
 *
 * # Safety
 * `ranks` and `latents` readable for `n` elements; `error` writable.
 */
enum SeriationStatus seriation_ordering_error(const size_t *ranks,
                                              const double *latents,
                                              size_t n,
                                              size_t *error);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SERIATION_H */
