#ifndef SFL_H
#define SFL_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SflStatus {
  SFL_STATUS_OK = 0,
  SFL_STATUS_NULL_POINTER = 1,
  SFL_STATUS_INVALID_ARGUMENT = 2,
  SFL_STATUS_PARSE = 3,
  SFL_STATUS_TOO_LARGE = 4,
  SFL_STATUS_UNCONVERGED = 5,
  SFL_STATUS_NUMERIC = 6,
  SFL_STATUS_PANIC = 7,
} SflStatus;

typedef enum SflFactorKind {
  /**
   * Every component is a star K_{1,j} with 1 <= j <= k.
   */
  SFL_FACTOR_KIND_STAR = 0,
  /**
   * Every component is an edge or a cycle.
   */
  SFL_FACTOR_KIND_K2_CK = 1,
} SflFactorKind;

typedef enum SflFamily {
  SFL_FAMILY_MAIN1 = 1,
  SFL_FAMILY_MAIN2 = 2,
  SFL_FAMILY_MAIN3 = 3,
} SflFamily;

/**
 * Opaque graph handle.
 */
typedef struct SflGraph SflGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `sfl_*` call on the same thread.
 */
const char *sfl_last_error(void);

/**
 * Library version as a static string.
 */
const char *sfl_version(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void sfl_string_free(char *s);

/**
 * Parses a graph6 string.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SflStatus sfl_graph_from_graph6(const char *text, struct SflGraph **out);

/**
 * Parses an edge list: a first line holding `n`, then one `u v` pair per line.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum SflStatus sfl_graph_from_edge_list(const char *text, struct SflGraph **out);

/**
 * Builds a graph on `n` vertices from `m` pairs stored flat in `pairs`
 * (`2 * m` entries). `pairs` may be null when `m == 0`.
 *
 * # Safety
 * `pairs` must point to `2 * m` readable values; `out` must be writable.
 */
enum SflStatus sfl_graph_from_edges(size_t n, const size_t *pairs, size_t m, struct SflGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not have been freed already.
 */
void sfl_graph_free(struct SflGraph *g);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sfl_graph_order(const struct SflGraph *g);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sfl_graph_edge_count(const struct SflGraph *g);

/**
 * Encodes the graph as graph6. Free the result with `sfl_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SflStatus sfl_graph_to_graph6(const struct SflGraph *g, char **out);

/**
 * Spectral radius by power iteration. Pass `tol <= 0` or `max_iter == 0`
 * for the defaults. `residual` may be null.
 *
 * # Safety
 * `g` must be a live handle; `rho` must be writable.
 */
enum SflStatus sfl_spectral_radius(const struct SflGraph *g,
                                   double tol,
                                   size_t max_iter,
                                   double *rho,
                                   double *residual);

/**
 * Twice the fractional matching number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SflStatus sfl_fractional_matching_doubled(const struct SflGraph *g, size_t *out);

/**
 * `max_S (i(G−S) − c|S|)` over all vertex subsets (orders up to 24).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SflStatus sfl_max_deficiency(const struct SflGraph *g, size_t c, int64_t *out);

/**
 * Decides whether a factor of the given kind exists.
 *
 * # Safety
 * `g` must be a live handle; `exists` must be writable.
 */
enum SflStatus sfl_has_factor(const struct SflGraph *g,
                              enum SflFactorKind kind,
                              size_t k,
                              bool *exists);

/**
 * The validated factor certificate as JSON. Free with `sfl_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SflStatus sfl_factor_certificate_json(const struct SflGraph *g,
                                           enum SflFactorKind kind,
                                           size_t k,
                                           char **out);

/**
 * The extremal graph of a theorem family.
 *
 * # Safety
 * `out` must be writable.
 */
enum SflStatus sfl_extremal_graph(enum SflFamily family,
                                  size_t n,
                                  size_t delta,
                                  size_t k,
                                  struct SflGraph **out);

/**
 * Spectral threshold of a theorem family (the extremal graph's spectral
 * radius). `order_bound_holds` may be null.
 *
 * # Safety
 * `value` must be writable.
 */
enum SflStatus sfl_threshold(enum SflFamily family,
                             size_t n,
                             size_t delta,
                             size_t k,
                             double *value,
                             bool *order_bound_holds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SFL_H */
