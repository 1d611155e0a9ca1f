#ifndef INTERCAT_H
#define INTERCAT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. Zero is success.
 */
typedef enum IcStatus {
  IC_STATUS_OK = 0,
  IC_STATUS_NULL_ARGUMENT = 1,
  IC_STATUS_INVALID_UTF8 = 2,
  IC_STATUS_PARSE = 3,
  /**
   * The data breaks a category, functor or transformation law.
   */
  IC_STATUS_LAW_VIOLATION = 4,
  /**
   * Inputs do not fit together (domains, codomains, shapes, kinds).
   */
  IC_STATUS_MISMATCH = 5,
  IC_STATUS_TOO_LARGE = 6,
  IC_STATUS_PRECONDITION_VIOLATED = 7,
  /**
   * A bug: the library panicked.
   */
  IC_STATUS_INTERNAL = 99,
} IcStatus;

/**
 * An internal category.
 */
typedef struct IcCategory IcCategory;

/**
 * A functor between internal categories.
 */
typedef struct IcFunctor IcFunctor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread; empty after a
 * success. Valid until the next call on the same thread.
 */
const char *ic_last_error(void);

/**
 * Library version, static.
 */
const char *ic_version(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` is null or came from this library and has not been freed.
 */
void ic_string_free(char *s);

/**
 * Parses a category document.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum IcStatus ic_category_from_json(const char *json, struct IcCategory **out);

/**
 * The free arrow `s → t`.
 *
 * # Safety
 * `out` is writable.
 */
enum IcStatus ic_two_e(struct IcCategory **out);

/**
 * Canonical JSON for a category; free with `ic_string_free`.
 *
 * # Safety
 * `cat` is a live handle; `out` is writable.
 */
enum IcStatus ic_category_to_json(const struct IcCategory *cat, char **out);

/**
 * Object and morphism counts.
 *
 * # Safety
 * `cat` is a live handle; the outputs are writable.
 */
enum IcStatus ic_category_counts(const struct IcCategory *cat, size_t *objects, size_t *morphisms);

/**
 * Re-runs the category law suite (handles are validated on creation, so
 * this only fails on a null handle).
 *
 * # Safety
 * `cat` is a live handle.
 */
enum IcStatus ic_category_validate(const struct IcCategory *cat);

/**
 * # Safety
 * `cat` is null or an unfreed handle.
 */
void ic_category_free(struct IcCategory *cat);

/**
 * Parses a functor document with inline domain and codomain.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is writable.
 */
enum IcStatus ic_functor_from_json(const char *json, struct IcFunctor **out);

/**
 * Canonical JSON for a functor; free with `ic_string_free`.
 *
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum IcStatus ic_functor_to_json(const struct IcFunctor *f, char **out);

/**
 * A new handle on the codomain of `f`.
 *
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum IcStatus ic_functor_codomain(const struct IcFunctor *f, struct IcCategory **out);

/**
 * # Safety
 * `f` is null or an unfreed handle.
 */
void ic_functor_free(struct IcFunctor *f);

/**
 * Coequaliser `Q` of a parallel pair, materialised at depth `bound`.
 * `exact` reports whether the codomain of `Q` is the whole quotient or a
 * truncation of an infinite one.
 *
 * # Safety
 * `f`, `g` are live handles; `q` and `exact` are writable.
 */
enum IcStatus ic_coequalize(const struct IcFunctor *f,
                            const struct IcFunctor *g,
                            size_t bound,
                            struct IcFunctor **q,
                            bool *exact);

/**
 * `2[f]` for a function document `f`.
 *
 * # Safety
 * `function_json` is a NUL-terminated string; `out` is writable.
 */
enum IcStatus ic_suspend(const char *function_json, struct IcFunctor **out);

/**
 * Whether `f` is a discrete Conduché fibration.
 *
 * # Safety
 * `f` is a live handle; `out` is writable.
 */
enum IcStatus ic_is_conduche(const struct IcFunctor *f, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTERCAT_H */
