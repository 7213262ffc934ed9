#ifndef DEMING_H
#define DEMING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DemingEgervary {
  DEMING_EGERVARY_EGERVARY = 0,
  DEMING_EGERVARY_NOT_EGERVARY = 1,
  DEMING_EGERVARY_UNDECIDED = 2,
} DemingEgervary;

typedef enum DemingStatus {
  DEMING_STATUS_OK = 0,
  DEMING_STATUS_NULL_POINTER = 1,
  DEMING_STATUS_INVALID_ARGUMENT = 2,
  DEMING_STATUS_PARSE_ERROR = 3,
  DEMING_STATUS_NOT_MATCHABLE = 4,
  DEMING_STATUS_BUDGET_EXCEEDED = 5,
  DEMING_STATUS_INTERNAL = 6,
} DemingStatus;

/**
 * Opaque graph handle.
 */
typedef struct DemingGraph DemingGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *deming_last_error(void);

/**
 * Builds a graph on `n` vertices from `m` edges given as `2m` endpoint indices.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (or be null when `m == 0`); `out` must be
 * writable.
 */
enum DemingStatus deming_graph_new(size_t n,
                                   const uint32_t *edges,
                                   size_t m,
                                   struct DemingGraph **out);

/**
 * Parses one graph6 string.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum DemingStatus deming_graph_from_graph6(const char *text, struct DemingGraph **out);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void deming_graph_free(struct DemingGraph *g);

/**
 * Number of vertices; 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t deming_graph_order(const struct DemingGraph *g);

/**
 * Number of edges; 0 for null.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t deming_graph_size(const struct DemingGraph *g);

/**
 * graph6 encoding.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_graph_to_graph6(const struct DemingGraph *g, char **out);

/**
 * Independence number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_alpha(const struct DemingGraph *g, size_t *out);

/**
 * Matching number.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_matching_number(const struct DemingGraph *g, size_t *out);

/**
 * Whether α + ν = n.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_is_ke(const struct DemingGraph *g, bool *out);

/**
 * Egerváry verdict of a matchable graph.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_egervary(const struct DemingGraph *g, enum DemingEgervary *out);

/**
 * KE certificate of a matchable graph as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_ke_certificate_json(const struct DemingGraph *g, char **out);

/**
 * Deming decomposition as JSON (of the Deming extension when `g` is unmatchable).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_decompose_json(const struct DemingGraph *g, char **out);

/**
 * Full analysis record as JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum DemingStatus deming_analyze_json(const struct DemingGraph *g, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void deming_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEMING_H */
