#ifndef PECR_H
#define PECR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PecrStatus {
  PECR_STATUS_OK = 0,
  /**
   * Null pointer, bad length or non-UTF-8 string.
   */
  PECR_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Masses negative, non-finite or not summing to one.
   */
  PECR_STATUS_INVALID_MASS = 2,
  /**
   * Argument outside the domain of the operation.
   */
  PECR_STATUS_DOMAIN = 3,
  /**
   * The rule's precondition does not hold for these sources.
   */
  PECR_STATUS_PRECONDITION = 4,
  /**
   * Rule, operator or document could not be parsed.
   */
  PECR_STATUS_PARSE = 5,
  /**
   * Sources live on different frames.
   */
  PECR_STATUS_FRAME_MISMATCH = 6,
  /**
   * Internal panic; the library state is unaffected.
   */
  PECR_STATUS_PANIC = 7,
  PECR_STATUS_OTHER = 8,
} PecrStatus;

/**
 * Opaque mass function handle.
 */
typedef struct PecrMass PecrMass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *pecr_last_error_message(void);

/**
 * Builds a mass function on the frame `{1, ..., n_elements}` from `len`
 * masses indexed by bitmask; `len` must be `2^n_elements`.
 *
 * # Safety
 * `masses` must point to `len` readable doubles; `out` must be writable.
 */
enum PecrStatus pecr_mass_new(size_t n_elements,
                              const double *masses,
                              size_t len,
                              struct PecrMass **out);

/**
 * Parses a JSON document `{"frame": [...], "masses": {"a|b": 0.4, ...}}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PecrStatus pecr_mass_from_json(const char *json, struct PecrMass **out);

/**
 * Serializes the focal sets as a JSON document. Free the result with
 * `pecr_string_free`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum PecrStatus pecr_mass_to_json(const struct PecrMass *m, char **out);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void pecr_string_free(char *s);

/**
 * # Safety
 * `m` must come from this library and not be used afterwards, or be null.
 */
void pecr_mass_free(struct PecrMass *m);

/**
 * Number of frame elements, or 0 for a null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
size_t pecr_mass_frame_size(const struct PecrMass *m);

/**
 * Copies the `2^n` masses into `buf`, which holds `len` doubles.
 *
 * # Safety
 * `m` must be a live handle; `buf` must have room for `len` doubles.
 */
enum PecrStatus pecr_mass_values(const struct PecrMass *m, double *buf, size_t len);

/**
 * Mass of the empty set, or NaN for a null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
double pecr_mass_conflict(const struct PecrMass *m);

/**
 * Nonspecificity `Σ m(A) log2 |A|`, or NaN for a null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
double pecr_mass_ignorance(const struct PecrMass *m);

/**
 * Combines `count` sources with the rule named by `rule`, e.g. `ccr`,
 * `dempster` or `pecr:product:max`.
 *
 * # Safety
 * `rule` must be NUL-terminated; `sources` must point to `count` live
 * handles; `out` must be writable.
 */
enum PecrStatus pecr_combine(const char *rule,
                             const struct PecrMass *const *sources,
                             size_t count,
                             struct PecrMass **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PECR_H */
