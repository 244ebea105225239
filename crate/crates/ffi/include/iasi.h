#ifndef IASI_H
#define IASI_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IasiPolicy {
  IASI_POLICY_FIXED = 0,
  IASI_POLICY_RANDOM = 1,
  IASI_POLICY_MAXIMAL = 2,
} IasiPolicy;

typedef enum IasiStatus {
  IASI_STATUS_OK = 0,
  IASI_STATUS_NULL_ARGUMENT = 1,
  IASI_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON, schema violation or invalid graph.
   */
  IASI_STATUS_INVALID_DOCUMENT = 3,
  IASI_STATUS_INVALID_ARGUMENT = 4,
  IASI_STATUS_OVERFLOW = 5,
  /**
   * Two vertices or two edges would receive the same label.
   */
  IASI_STATUS_COLLISION = 6,
  /**
   * The input labeling is not arithmetic.
   */
  IASI_STATUS_NOT_ARITHMETIC = 7,
  /**
   * The transformed labeling is an IASI but not arithmetic.
   */
  IASI_STATUS_NOT_PRESERVED = 8,
  IASI_STATUS_PANIC = 9,
} IasiStatus;

typedef enum IasiTransformOp {
  /**
   * Needs both endpoint arguments.
   */
  IASI_TRANSFORM_OP_CONTRACT = 0,
  /**
   * Needs the vertex in the first argument.
   */
  IASI_TRANSFORM_OP_REDUCE = 1,
  /**
   * Needs both endpoint arguments.
   */
  IASI_TRANSFORM_OP_SUBDIVIDE = 2,
  IASI_TRANSFORM_OP_LINE = 3,
  IASI_TRANSFORM_OP_TOTAL = 4,
} IasiTransformOp;

/**
 * Opaque labeled graph.
 */
typedef struct IasiLabeledGraph IasiLabeledGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * owned by the library and valid until the next call.
 */
const char *iasi_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void iasi_string_free(char *s);

/**
 * # Safety
 * `p` and `len` must come from one call of this library and not yet be freed.
 */
void iasi_u64_array_free(uint64_t *p, size_t len);

/**
 * # Safety
 * `g` must be null or a handle returned by this library and not yet freed.
 */
void iasi_labeled_graph_free(struct IasiLabeledGraph *g);

/**
 * Parses a labeling document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum IasiStatus iasi_labeled_graph_from_json(const char *json, struct IasiLabeledGraph **out);

/**
 * Renders a labeling document (pretty JSON, trailing newline).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IasiStatus iasi_labeled_graph_to_json(const struct IasiLabeledGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; the out-pointers must be writable.
 */
enum IasiStatus iasi_labeled_graph_size(const struct IasiLabeledGraph *g,
                                        size_t *vertices,
                                        size_t *edges);

/**
 * Writes whether vertex labels and edge labels are each pairwise distinct.
 *
 * # Safety
 * `g` must be a live handle; `is_iasi` must be writable.
 */
enum IasiStatus iasi_verify(const struct IasiLabeledGraph *g, bool *is_iasi);

/**
 * Classification report as a JSON object.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum IasiStatus iasi_classify_json(const struct IasiLabeledGraph *g, bool strict_semi, char **out);

/**
 * Sumset of two non-empty sets, given as arrays in any order. The result is
 * sorted ascending and freed with [`iasi_u64_array_free`].
 *
 * # Safety
 * `a` and `b` must point to `a_len` and `b_len` readable values; the
 * out-pointers must be writable.
 */
enum IasiStatus iasi_sumset(const uint64_t *a,
                            size_t a_len,
                            const uint64_t *b,
                            size_t b_len,
                            uint64_t **out,
                            size_t *out_len);

/**
 * Constructs an arithmetic labeling of the graph in `graph_json` (either a
 * bare `{"vertices":..,"edges":..}` object or a document with a `graph` key).
 *
 * # Safety
 * `graph_json` must be a NUL-terminated string; `out` must be writable.
 */
enum IasiStatus iasi_construct(const char *graph_json,
                               uint64_t base_difference,
                               size_t min_size,
                               size_t max_size,
                               enum IasiPolicy policy,
                               uint64_t seed,
                               struct IasiLabeledGraph **out);

/**
 * Applies a label-transferring transformation to an arithmetic labeling.
 * `first` and `second` name the edge endpoints for contraction and
 * subdivision; reduction reads the vertex from `first`; both are ignored
 * (and may be null) for the line and total graphs.
 *
 * # Safety
 * `g` must be a live handle; the name arguments must be null or
 * NUL-terminated; `out` must be writable.
 */
enum IasiStatus iasi_transform(const struct IasiLabeledGraph *g,
                               enum IasiTransformOp op,
                               const char *first,
                               const char *second,
                               struct IasiLabeledGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IASI_H */
