#ifndef SPIN_FFI_H
#define SPIN_FFI_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every FFI call.
 */
typedef enum SpinStatus {
  /**
   * Success.
   */
  SPIN_STATUS_OK = 0,
  /**
   * Valid request, but the mathematics rejects it (precondition failure).
   */
  SPIN_STATUS_DOMAIN_ERROR = 1,
  /**
   * Input failed to parse against the schema.
   */
  SPIN_STATUS_MALFORMED_INPUT = 2,
  /**
   * A required pointer argument was null.
   */
  SPIN_STATUS_NULL_POINTER = 3,
  /**
   * An input string was not valid UTF-8.
   */
  SPIN_STATUS_INVALID_UTF8 = 4,
} SpinStatus;

/**
 * Opaque handle to a parsed stable graph.
 */
typedef struct SpinGraph SpinGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * is valid until the next failing call on the same thread; do not free it.
 */
const char *spin_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by this library and not freed before.
 */
void spin_string_free(char *s);

/**
 * Parse a graph from JSON. On success writes a new handle to `out`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be valid.
 */
enum SpinStatus spin_graph_from_json(const char *json, struct SpinGraph **out);

/**
 * Release a graph handle.
 *
 * # Safety
 * `g` must come from `spin_graph_from_json` and not be freed twice.
 */
void spin_graph_free(struct SpinGraph *g);

/**
 * Validate a graph; writes the validation report JSON.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum SpinStatus spin_graph_validate(const struct SpinGraph *g, char **out);

/**
 * Enumerate all spin types; writes a JSON array.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum SpinStatus spin_graph_enumerate(const struct SpinGraph *g, char **out);

/**
 * Root counts per spin type. `type_json` may be null to cover all types.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum SpinStatus spin_graph_count(const struct SpinGraph *g, const char *type_json, char **out);

/**
 * Automorphism group orders. `type_json` may be null to cover all types.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum SpinStatus spin_graph_aut(const struct SpinGraph *g, const char *type_json, char **out);

/**
 * Universal deformation presentations. `type_json` may be null.
 *
 * # Safety
 * `g` must be a live handle; `out` must be valid.
 */
enum SpinStatus spin_graph_deform(const struct SpinGraph *g, const char *type_json, char **out);

/**
 * Normalize one exceptional chain; writes `{"coeffs", "m", "degrees"}`.
 *
 * # Safety
 * `out` must be valid.
 */
enum SpinStatus spin_chain_normalize(uint32_t r, uint32_t n, uint32_t residue, char **out);

/**
 * Limit spin type of a family given as JSON.
 *
 * # Safety
 * `family_json` must be a valid string; `out` must be valid.
 */
enum SpinStatus spin_limit(const char *family_json, char **out);

/**
 * Classify a local spin map bundle given as JSON.
 *
 * # Safety
 * `bundle_json` must be a valid string; `out` must be valid.
 */
enum SpinStatus spin_local_classify(const char *bundle_json, char **out);

/**
 * Decide isomorphism of two local modules given as JSON.
 *
 * # Safety
 * `bundle_json` must be a valid string; `out` must be valid.
 */
enum SpinStatus spin_local_isom(const char *bundle_json, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPIN_FFI_H */
