#ifndef SEXTICLAB_H
#define SEXTICLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which triple-plane normalization to use.
 */
typedef enum SxConvention {
  /**
   * `x3^3 - 3 f2 x3 + 2 f3`
   */
  SX_CONVENTION_LEMMA = 0,
  /**
   * `x3^3 + f2 x3 + f3`
   */
  SX_CONVENTION_COROLLARY = 1,
} SxConvention;

/**
 * Result codes.
 */
typedef enum SxStatus {
  SX_STATUS_OK = 0,
  /**
   * The computation ran but a checked property does not hold.
   */
  SX_STATUS_VERIFICATION_FAILED = 1,
  SX_STATUS_PARSE_ERROR = 2,
  SX_STATUS_INVALID_ARGUMENT = 3,
  SX_STATUS_NULL_POINTER = 4,
  SX_STATUS_INVALID_UTF8 = 5,
  SX_STATUS_INTERNAL = 6,
} SxStatus;

/**
 * A polynomial with rational coefficients.
 */
typedef struct SxPoly SxPoly;

/**
 * A cubic surface `x3^3 + c1 f2 x3 + c2 f3`.
 */
typedef struct SxSurface SxSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *sx_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void sx_string_free(char *s);

/**
 * Parses `expr` into a new handle stored in `*out`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string and `out` writable.
 */
enum SxStatus sx_poly_parse(const char *expr, struct SxPoly **out);

/**
 * # Safety
 * `p` must be NULL or a live handle from [`sx_poly_parse`].
 */
void sx_poly_free(struct SxPoly *p);

/**
 * Canonical text of `p`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum SxStatus sx_poly_to_string(const struct SxPoly *p, char **out);

/**
 * Total degree of `p`, or -1 for the zero polynomial.
 *
 * # Safety
 * `p` must be NULL or a live handle.
 */
int64_t sx_poly_total_degree(const struct SxPoly *p);

/**
 * Builds the cubic surface for the conic `f2` and cubic `f3`.
 *
 * # Safety
 * `f2`, `f3` must be live handles and `out` writable.
 */
enum SxStatus sx_surface_new(const struct SxPoly *f2,
                             const struct SxPoly *f3,
                             enum SxConvention convention,
                             struct SxSurface **out);

/**
 * # Safety
 * `s` must be NULL or a live handle from [`sx_surface_new`].
 */
void sx_surface_free(struct SxSurface *s);

/**
 * Branch curve of the surface as JSON. Returns `VerificationFailed` (with
 * the JSON still written) when it differs from the expected discriminant.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SxStatus sx_surface_branch_locus_json(const struct SxSurface *s, char **out);

/**
 * Condition rows and projection centers of the surface as JSON.
 *
 * # Safety
 * `s` must be a live handle and `out` writable.
 */
enum SxStatus sx_surface_centers_json(const struct SxSurface *s, uint64_t seed, char **out);

/**
 * Six-cusp verification of `a*f3^2 + b*f2^3`; `a` and `b` are rationals
 * written like `"-3/2"`.
 *
 * # Safety
 * Handles must be live, strings NUL-terminated, `out` writable.
 */
enum SxStatus sx_sextic_verify_json(const struct SxPoly *f2,
                                    const struct SxPoly *f3,
                                    const char *a,
                                    const char *b,
                                    uint64_t seed,
                                    char **out);

/**
 * j-invariant of `y^2 = x^3 + a x + b` as a rational string.
 *
 * # Safety
 * Strings must be NUL-terminated and `out` writable.
 */
enum SxStatus sx_j_invariant(const char *a, const char *b, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEXTICLAB_H */
