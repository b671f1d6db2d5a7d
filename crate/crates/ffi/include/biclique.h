#ifndef BICLIQUE_H
#define BICLIQUE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which exact quantity [`bq_graph_oracle`] computes.
 */
typedef enum BqOracle {
  BQ_ORACLE_CHROMATIC_NUMBER = 0,
  BQ_ORACLE_INDEPENDENCE_NUMBER = 1,
  BQ_ORACLE_MIN_BICLIQUE_PARTITION = 2,
  BQ_ORACLE_MIN_COVER_WEIGHT = 3,
} BqOracle;

/**
 * Result code of every fallible call.
 */
typedef enum BqStatus {
  BQ_STATUS_OK = 0,
  BQ_STATUS_NULL_POINTER = 1,
  BQ_STATUS_INVALID_UTF8 = 2,
  BQ_STATUS_PARSE = 3,
  BQ_STATUS_VALIDATION = 4,
  BQ_STATUS_RESOURCE = 5,
  BQ_STATUS_BUFFER_TOO_SMALL = 6,
  BQ_STATUS_OVERFLOW = 7,
  BQ_STATUS_PANIC = 8,
} BqStatus;

/**
 * Opaque graph handle.
 */
typedef struct BqGraph BqGraph;

/**
 * Opaque biclique system handle.
 */
typedef struct BqSystem BqSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *bq_last_error(void);

/**
 * Parses the graph text format (`n <count>`, `e <u> <v>` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum BqStatus bq_graph_parse(const char *text, struct BqGraph **out);

/**
 * # Safety
 * `graph` must be NULL or a handle from this library not yet freed.
 */
void bq_graph_free(struct BqGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `n` and `edges` valid for writes.
 */
enum BqStatus bq_graph_size(const struct BqGraph *graph, size_t *n, size_t *edges);

/**
 * Parses the biclique system text format (`n <count>`, `b <left> | <right>` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum BqStatus bq_system_parse(const char *text, struct BqSystem **out);

/**
 * # Safety
 * `system` must be NULL or a handle from this library not yet freed.
 */
void bq_system_free(struct BqSystem *system);

/**
 * Number of bicliques.
 *
 * # Safety
 * `system` must be a live handle; `out` valid for writes.
 */
enum BqStatus bq_system_len(const struct BqSystem *system, size_t *out);

/**
 * Union graph of the system as a new handle.
 *
 * # Safety
 * `system` must be a live handle; `out` valid for writes.
 */
enum BqStatus bq_system_union_graph(const struct BqSystem *system, struct BqGraph **out);

/**
 * # Safety
 * `system` must be a live handle; `out` valid for writes.
 */
enum BqStatus bq_system_is_partition(const struct BqSystem *system, bool *out);

/**
 * # Safety
 * Both handles must be live; `out` valid for writes.
 */
enum BqStatus bq_system_covers(const struct BqSystem *system,
                               const struct BqGraph *graph,
                               bool *out);

/**
 * Runs the staged coloring. Fails with `BQ_STATUS_VALIDATION` when the
 * bicliques are not edge-disjoint.
 *
 * # Safety
 * `system` must be a live handle; outputs valid for writes.
 */
enum BqStatus bq_system_color(const struct BqSystem *system, size_t *distinct_colors, bool *proper);

/**
 * Derandomized independent set; survivors are written ascending into
 * `buf`. `len` always receives the survivor count; if it exceeds
 * `capacity` the call returns `BQ_STATUS_BUFFER_TOO_SMALL` and writes
 * nothing to `buf`.
 *
 * # Safety
 * `system` must be a live handle; `buf` valid for `capacity` writes (may be
 * NULL when `capacity` is 0); `len` valid for writes.
 */
enum BqStatus bq_system_extract(const struct BqSystem *system,
                                size_t *buf,
                                size_t capacity,
                                size_t *len);

/**
 * Runs an exact oracle with default limits, overriding the time budget
 * when `time_budget_secs > 0`.
 *
 * # Safety
 * `graph` must be a live handle; `out` valid for writes.
 */
enum BqStatus bq_graph_oracle(const struct BqGraph *graph,
                              enum BqOracle oracle,
                              double time_budget_secs,
                              size_t *out);

/**
 * Color-count bound for `m` edge-disjoint bicliques; `BQ_STATUS_OVERFLOW`
 * if it does not fit in 64 bits.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum BqStatus bq_colors_bound(uint64_t m, uint64_t *out);

/**
 * Smallest `m >= 1` whose color-count bound reaches `k`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum BqStatus bq_invert_bound(uint64_t k, uint64_t *out);

/**
 * Serializes a graph; release the result with [`bq_string_free`].
 *
 * # Safety
 * `graph` must be a live handle; `out` valid for writes.
 */
enum BqStatus bq_graph_write(const struct BqGraph *graph, char **out);

/**
 * Serializes a system; release the result with [`bq_string_free`].
 *
 * # Safety
 * `system` must be a live handle; `out` valid for writes.
 */
enum BqStatus bq_system_write(const struct BqSystem *system, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void bq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BICLIQUE_H */
