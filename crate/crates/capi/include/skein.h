#ifndef SKEIN_H
#define SKEIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Expansion families for [`skein_expand`].
 */
typedef enum SkeinFamily {
  SKEIN_FAMILY_DN = 0,
  SKEIN_FAMILY_BN = 1,
} SkeinFamily;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SkeinStatus {
  SKEIN_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SKEIN_STATUS_NULL_ARGUMENT = 1,
  /**
   * Text argument was not valid UTF-8.
   */
  SKEIN_STATUS_INVALID_UTF8 = 2,
  /**
   * Input failed to parse or validate.
   */
  SKEIN_STATUS_PARSE = 3,
  /**
   * No bundled corpus entry with the given name.
   */
  SKEIN_STATUS_UNKNOWN_NAME = 4,
  /**
   * Internal error (a caught panic).
   */
  SKEIN_STATUS_INTERNAL = 5,
} SkeinStatus;

/**
 * Opaque unoriented link diagram.
 */
typedef struct SkeinDiagram SkeinDiagram;

/**
 * Opaque exact polynomial value (a quotient of Laurent polynomials).
 */
typedef struct SkeinValue SkeinValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a PD-format diagram (`X[a,b,c,d]` tokens and `O` loops).
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success the caller owns the handle and must release it with
 * [`skein_diagram_free`].
 */
enum SkeinStatus skein_diagram_parse_pd(const char *text, struct SkeinDiagram **out);

/**
 * Parse a braid spec `BR strands : i1 i2 -i1 ...` and close it.
 *
 * # Safety
 * As for [`skein_diagram_parse_pd`].
 */
enum SkeinStatus skein_diagram_from_braid(const char *spec, struct SkeinDiagram **out);

/**
 * Look up a bundled corpus diagram by name.
 *
 * # Safety
 * As for [`skein_diagram_parse_pd`].
 */
enum SkeinStatus skein_diagram_corpus(const char *name, struct SkeinDiagram **out);

/**
 * # Safety
 * `d` must be a handle from this library, not yet freed; null is a no-op.
 */
void skein_diagram_free(struct SkeinDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
uintptr_t skein_diagram_crossings(const struct SkeinDiagram *d);

/**
 * # Safety
 * `d` must be a live diagram handle.
 */
uintptr_t skein_diagram_components(const struct SkeinDiagram *d);

/**
 * Framed HOMFLY-PT polynomial of the diagram under its canonical
 * orientation.
 *
 * # Safety
 * `d` must be a live diagram handle and `out` a valid pointer; the caller
 * frees the value with [`skein_value_free`].
 */
enum SkeinStatus skein_eval_homfly(const struct SkeinDiagram *d, struct SkeinValue **out);

/**
 * Framed Kauffman polynomial of the diagram.
 *
 * # Safety
 * As for [`skein_eval_homfly`].
 */
enum SkeinStatus skein_eval_kauffman(const struct SkeinDiagram *d, struct SkeinValue **out);

/**
 * Weighted state sum of the diagram with the family's shipped rule table.
 *
 * # Safety
 * As for [`skein_eval_homfly`].
 */
enum SkeinStatus skein_expand(const struct SkeinDiagram *d,
                              enum SkeinFamily family,
                              struct SkeinValue **out);

/**
 * Check the expansion identity on one diagram; writes whether the state sum
 * equals the Kauffman polynomial and how many coherent states were summed.
 *
 * # Safety
 * `d` must be a live diagram handle; `equal` and `states` must be valid or
 * null (null outputs are skipped).
 */
enum SkeinStatus skein_verify_identity(const struct SkeinDiagram *d,
                                       bool *equal,
                                       uintptr_t *states);

/**
 * Substitute `a = q^n` in a value.
 *
 * # Safety
 * `v` must be a live value handle and `out` a valid pointer.
 */
enum SkeinStatus skein_value_substitute_a(const struct SkeinValue *v,
                                          int64_t n,
                                          struct SkeinValue **out);

/**
 * Exact equality of two values (cross-multiplied).
 *
 * # Safety
 * Both arguments must be live value handles.
 */
bool skein_value_equals(const struct SkeinValue *a, const struct SkeinValue *b);

/**
 * Render a value as signed monomial text; free with [`skein_string_free`].
 *
 * # Safety
 * `v` must be a live value handle.
 */
char *skein_value_to_text(const struct SkeinValue *v);

/**
 * Render a value as JSON coefficient triples; free with
 * [`skein_string_free`].
 *
 * # Safety
 * `v` must be a live value handle.
 */
char *skein_value_to_json(const struct SkeinValue *v);

/**
 * # Safety
 * `v` must be a handle from this library, not yet freed; null is a no-op.
 */
void skein_value_free(struct SkeinValue *v);

/**
 * # Safety
 * `s` must have been returned by a `skein_value_to_*` function.
 */
void skein_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEIN_H */
