#ifndef SPARSITY_FORGE_H
#define SPARSITY_FORGE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  /**
   * The answer is yes (sparse, partitioned, decomposed).
   */
  SF_STATUS_OK = 0,
  /**
   * A certified no; the JSON output holds the certificate.
   */
  SF_STATUS_NO = 1,
  SF_STATUS_NULL_ARGUMENT = 2,
  SF_STATUS_INVALID_UTF8 = 3,
  SF_STATUS_PARSE = 4,
  SF_STATUS_INVALID_ARGUMENT = 5,
  SF_STATUS_TOO_LARGE = 6,
  /**
   * An internal invariant failed or the library panicked.
   */
  SF_STATUS_INTERNAL = 7,
} SfStatus;

/**
 * Opaque graph handle.
 */
typedef struct SfGraph SfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sf_last_error(void);

/**
 * Library version as a static string.
 */
const char *sf_version(void);

/**
 * Parses one graph6 record.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
SfStatus sf_graph_from_graph6(const char *text, SfGraph **out);

/**
 * Parses an edge list (one `u v` pair per line, optional `n = N` header).
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
SfStatus sf_graph_from_edgelist(const char *text, SfGraph **out);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `endpoints` (`2 * edge_count` entries).
 *
 * # Safety
 * `endpoints` must point to `2 * edge_count` readable values (or be null
 * when `edge_count` is zero) and `out` must be a valid pointer.
 */
SfStatus sf_graph_new(size_t n, const size_t *endpoints, size_t edge_count, SfGraph **out);

/**
 * # Safety
 * `g` must come from one of the constructors and not be freed yet.
 */
size_t sf_graph_vertex_count(const SfGraph *g);

/**
 * # Safety
 * `g` must come from one of the constructors and not be freed yet.
 */
size_t sf_graph_edge_count(const SfGraph *g);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from one of the constructors and not be freed yet.
 */
void sf_graph_free(SfGraph *g);

/**
 * Releases a string returned through an `out` parameter. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed yet.
 */
void sf_string_free(char *s);

/**
 * Decides `(a, b)`-sparsity; `a` and `b` are rationals such as `"5/2"`.
 * Writes the certificate JSON and returns `Ok` or `No`.
 *
 * # Safety
 * `g` must be a live handle, `a` and `b` nul-terminated strings, and
 * `json_out` a valid pointer.
 */
SfStatus sf_check(const SfGraph *g, const char *a, const char *b, char **json_out);

/**
 * Partitions into an `(a1, b1)`-sparse and an `(a2, b2)`-sparse part.
 * Writes the partition JSON (or, for a host that is not sparse enough, its
 * sparsity certificate) and returns `Ok` or `No`.
 *
 * # Safety
 * `g` must be a live handle and `json_out` a valid pointer.
 */
SfStatus sf_partition(const SfGraph *g,
                      int64_t a1,
                      int64_t b1,
                      int64_t a2,
                      int64_t b2,
                      char **json_out);

/**
 * Splits an `(m, 0)`-sparse graph into a forest and an `(m, 1-2m)`-sparse
 * graph, re-verifying the result. Writes `{m, case, F, Gprime, verified}`,
 * or the sparsity certificate with `No` when the graph is not
 * `(m, 0)`-sparse.
 *
 * # Safety
 * `g` must be a live handle, `m` a nul-terminated string, and `json_out` a
 * valid pointer.
 */
SfStatus sf_decompose(const SfGraph *g, const char *m, char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPARSITY_FORGE_H */
