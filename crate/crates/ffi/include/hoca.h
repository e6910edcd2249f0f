#ifndef HOCA_H
#define HOCA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the `hoca` exit codes.
 */
typedef enum HocaStatus {
  HOCA_STATUS_OK = 0,
  /**
   * Null pointer, bad UTF-8 or an argument out of range.
   */
  HOCA_STATUS_INVALID_ARGUMENT = 1,
  HOCA_STATUS_BUDGET_EXCEEDED = 2,
  HOCA_STATUS_INVARIANT_VIOLATION = 3,
  HOCA_STATUS_MALFORMED = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  HOCA_STATUS_INTERNAL = 5,
} HocaStatus;

/**
 * A chain map between complexes.
 */
typedef struct HocaChainMap HocaChainMap;

/**
 * A bounded cochain complex.
 */
typedef struct HocaComplex HocaComplex;

/**
 * A finitely generated module.
 */
typedef struct HocaModule HocaModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *hoca_last_error(void);

/**
 * Version of the library as a static string.
 */
const char *hoca_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void hoca_string_free(char *s);

/**
 * Parses a complex document (`"format": 1`).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HocaStatus hoca_complex_from_json(const char *json, struct HocaComplex **out);

/**
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum HocaStatus hoca_complex_to_json(const struct HocaComplex *c, char **out);

/**
 * # Safety
 * `c` must come from this library or be null; it is invalid afterwards.
 */
void hoca_complex_free(struct HocaComplex *c);

/**
 * `H^n(C)`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be writable.
 */
enum HocaStatus hoca_complex_homology(const struct HocaComplex *c,
                                      int64_t n,
                                      struct HocaModule **out);

/**
 * `X ⊗ Y`.
 *
 * # Safety
 * `x` and `y` must be live handles; `out` must be writable.
 */
enum HocaStatus hoca_tensor(const struct HocaComplex *x,
                            const struct HocaComplex *y,
                            struct HocaComplex **out);

/**
 * `Hom_D(X, Y[n])`, resolving by free modules of rank one.
 *
 * # Safety
 * `x` and `y` must be live handles; `out` must be writable.
 */
enum HocaStatus hoca_derived_hom(const struct HocaComplex *x,
                                 const struct HocaComplex *y,
                                 int64_t n,
                                 struct HocaModule **out);

/**
 * Parses a chain map document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HocaStatus hoca_chain_map_from_json(const char *json, struct HocaChainMap **out);

/**
 * # Safety
 * `f` must come from this library or be null; it is invalid afterwards.
 */
void hoca_chain_map_free(struct HocaChainMap *f);

/**
 * Whether `f` induces isomorphisms on cohomology, written to `out` as 0 or 1.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HocaStatus hoca_chain_map_is_quasi_isomorphism(const struct HocaChainMap *f, int32_t *out);

/**
 * The mapping cone of `f`.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum HocaStatus hoca_cone(const struct HocaChainMap *f, struct HocaComplex **out);

/**
 * Invariant-factor notation such as `Z ⊕ Z/2`.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum HocaStatus hoca_module_to_string(const struct HocaModule *m, char **out);

/**
 * Number of generators, or -1 for a null handle.
 *
 * # Safety
 * `m` must be a live handle or null.
 */
int64_t hoca_module_rank(const struct HocaModule *m);

/**
 * # Safety
 * `m` must come from this library or be null; it is invalid afterwards.
 */
void hoca_module_free(struct HocaModule *m);

/**
 * Runs one acceptance criterion (1 to 10) with `seed`.
 */
enum HocaStatus hoca_selftest(uint32_t criterion, uint64_t seed);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOCA_H */
