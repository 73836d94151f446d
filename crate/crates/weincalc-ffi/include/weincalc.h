/* C interface to the weincalc exact Weingarten calculus engine. */

#ifndef WEINCALC_H
#define WEINCALC_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by the fallible entry points.
 */
typedef enum WcStatus {
  WcStatus_Ok = 0,
  /**
   * Mathematically out of domain (e.g. k > n for the Weingarten function).
   */
  WcStatus_Domain = 1,
  /**
   * Malformed input (bad query text, bad cycle type, bad route id).
   */
  WcStatus_Invalid = 2,
  /**
   * A required pointer was NULL.
   */
  WcStatus_NullPointer = 3,
  /**
   * Input text was not valid UTF-8.
   */
  WcStatus_Utf8 = 4,
  /**
   * Internal panic; report this as a bug.
   */
  WcStatus_Panic = 5,
} WcStatus;

/**
 * Opaque handle to a class function on S_k with exact values.
 */
typedef struct WcClassFn WcClassFn;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Weingarten function Wg_{k,n}. Routes: 0 = character expansion,
 * 1 = Gram inverse, 2 = dimension recursion, 3 = full ladder.
 */
enum WcStatus wc_weingarten(size_t k, int64_t n, int32_t route, struct WcClassFn **out);

/**
 * Weingarten function of the formal dimension symbol. Routes 0..=2.
 */
enum WcStatus wc_weingarten_symbolic(size_t k, int32_t route, struct WcClassFn **out);

/**
 * Canonical pseudo-Weingarten W_{k,n}, defined for every k, n >= 1.
 */
enum WcStatus wc_pseudo_weingarten(size_t k, int64_t n, struct WcClassFn **out);

/**
 * Ascension function of degree k at dimension n.
 */
enum WcStatus wc_ascension(size_t k, int64_t n, struct WcClassFn **out);

/**
 * Ascension function of the formal dimension symbol.
 */
enum WcStatus wc_ascension_symbolic(size_t k, struct WcClassFn **out);

/**
 * Descension function of degree k at dimension n (requires k <= n).
 */
enum WcStatus wc_descension(size_t k, int64_t n, struct WcClassFn **out);

/**
 * Descension function of the formal dimension symbol.
 */
enum WcStatus wc_descension_symbolic(size_t k, struct WcClassFn **out);

/**
 * Gram function G_{k,n}.
 */
enum WcStatus wc_gram(size_t k, int64_t n, struct WcClassFn **out);

/**
 * Gram function of the formal dimension symbol.
 */
enum WcStatus wc_gram_symbolic(size_t k, struct WcClassFn **out);

/**
 * Degree k of the underlying symmetric group; 0 on NULL input.
 *
 * # Safety
 * `handle` must come from this library and be unreleased.
 */
size_t wc_classfn_degree(const struct WcClassFn *handle);

/**
 * Exact value at a cycle type given as comma-separated parts, e.g. "2,1,1".
 * Returns a caller-owned string, or NULL with an error message.
 *
 * # Safety
 * `handle` must come from this library and be unreleased; `cycle_type` must
 * be a valid NUL-terminated string.
 */
char *wc_classfn_value(const struct WcClassFn *handle, const char *cycle_type);

/**
 * The whole table as JSON (cycle type -> exact value string). Caller owns
 * the returned string; NULL on error.
 *
 * # Safety
 * `handle` must come from this library and be unreleased.
 */
char *wc_classfn_json(const struct WcClassFn *handle);

/**
 * Releases a class-function handle. NULL is a no-op.
 *
 * # Safety
 * `handle` must come from this library and not already be released.
 */
void wc_classfn_free(struct WcClassFn *handle);

/**
 * Exact moment of a query like `p[1,2]^2 p~[n,2]^2 r[2,2]^3` at dimension n.
 * U-queries go through the Weingarten sum unless `recursive` is nonzero.
 * Caller owns the returned string; NULL on error.
 *
 * # Safety
 * `query` must be a valid NUL-terminated string.
 */
char *wc_moment(const char *query, int64_t n, int32_t recursive);

/**
 * Exact symbolic moment of a p/r query as a rational function of n.
 * Caller owns the returned string; NULL on error.
 *
 * # Safety
 * `query` must be a valid NUL-terminated string.
 */
char *wc_moment_symbolic(const char *query);

/**
 * Monte Carlo estimate of a moment; returns the run report as JSON
 * (query, n, N, seed, mean, stderr). Caller owns the string; NULL on error.
 *
 * # Safety
 * `query` must be a valid NUL-terminated string.
 */
char *wc_sample_moment_json(const char *query,
                            int64_t n,
                            uint64_t samples,
                            uint64_t seed,
                            size_t workers);

/**
 * A copy of the most recent error message on this thread (possibly empty).
 * Caller owns the returned string.
 */
char *wc_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must have been returned by this library and not already be released.
 */
void wc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEINCALC_H */
