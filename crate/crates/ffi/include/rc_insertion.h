#ifndef RC_INSERTION_H
#define RC_INSERTION_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  /**
   * Unparsable or inconsistent input.
   */
  RC_STATUS_MALFORMED = 1,
  /**
   * Valid input outside what the operation accepts.
   */
  RC_STATUS_PRECONDITION = 2,
  /**
   * A checked invariant failed; this is a bug.
   */
  RC_STATUS_INTERNAL = 3,
  /**
   * A required pointer argument was null.
   */
  RC_STATUS_NULL_POINTER = 4,
  /**
   * The library panicked.
   */
  RC_STATUS_PANIC = 5,
} RcStatus;

/**
 * An rc-graph or any finite set of crossings.
 */
typedef struct RcGraph RcGraph;

/**
 * A tableau of transpositions.
 */
typedef struct RcTableau RcTableau;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *rc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void rc_string_free(char *s);

/**
 * Parses `{"crossings": [[row, col], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum RcStatus rc_graph_from_json(const char *json, struct RcGraph **out);

/**
 * Serializes a graph as JSON.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum RcStatus rc_graph_to_json(const struct RcGraph *graph, char **out);

/**
 * ASCII picture of a graph.
 *
 * # Safety
 * `graph` must be a live handle and `out` writable.
 */
enum RcStatus rc_graph_render(const struct RcGraph *graph, char **out);

/**
 * Number of crossings; 0 for null.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t rc_graph_len(const struct RcGraph *graph);

/**
 * 1 if the graph is reduced, 0 if not or null.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
int32_t rc_graph_is_reduced(const struct RcGraph *graph);

/**
 * Writes the one-line notation of the graph's permutation into
 * `images[0..cap]` and its length into `len`. When `cap` is too small only
 * `len` is written and the call still succeeds; a null `images` with `cap`
 * 0 queries the length.
 *
 * # Safety
 * `graph` must be a live handle, `images` writable for `cap` elements and
 * `len` writable.
 */
enum RcStatus rc_graph_permutation(const struct RcGraph *graph,
                                   size_t *images,
                                   size_t cap,
                                   size_t *len);

/**
 * Releases a graph. Null is ignored.
 *
 * # Safety
 * `graph` must come from this library and not have been freed.
 */
void rc_graph_free(struct RcGraph *graph);

/**
 * Parses `{"shape": [...], "r": k, "entries": [[a, b], ..., null]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum RcStatus rc_tableau_from_json(const char *json, struct RcTableau **out);

/**
 * Serializes a tableau as JSON.
 *
 * # Safety
 * `tableau` must be a live handle and `out` writable.
 */
enum RcStatus rc_tableau_to_json(const struct RcTableau *tableau, char **out);

/**
 * The filled entries in box order, formatted as `(35)(36)(14)`.
 *
 * # Safety
 * `tableau` must be a live handle and `out` writable.
 */
enum RcStatus rc_tableau_word(const struct RcTableau *tableau, char **out);

/**
 * Releases a tableau. Null is ignored.
 *
 * # Safety
 * `tableau` must come from this library and not have been freed.
 */
void rc_tableau_free(struct RcTableau *tableau);

/**
 * `U = R <- Y` and its tableau. On success the caller owns both outputs.
 *
 * # Safety
 * `graph` and `y` must be live handles; `u_out` and `t_out` writable.
 */
enum RcStatus rc_insert(const struct RcGraph *graph,
                        const struct RcGraph *y,
                        size_t r,
                        struct RcGraph **u_out,
                        struct RcTableau **t_out);

/**
 * Recovers `(R, Y)` from `(U, T)`, where `w` is the permutation of `R` in
 * one-line notation. On success the caller owns both outputs.
 *
 * # Safety
 * `u` and `t` must be live handles, `w` readable for `w_len` elements and
 * the outputs writable.
 */
enum RcStatus rc_inverse_insert(const struct RcGraph *u,
                                const struct RcTableau *t,
                                const size_t *w,
                                size_t w_len,
                                size_t r,
                                struct RcGraph **r_out,
                                struct RcGraph **y_out);

/**
 * Cross-checked coefficients `c^u_{w, v(λ, r)}` as a JSON report. `n` is
 * the ambient staircase size; 0 picks the default.
 *
 * # Safety
 * `w` and `lambda` must be readable for their lengths and `out` writable.
 */
enum RcStatus rc_lr_coefficients(const size_t *w,
                                 size_t w_len,
                                 const size_t *lambda,
                                 size_t lambda_len,
                                 size_t r,
                                 size_t n,
                                 char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RC_INSERTION_H */
