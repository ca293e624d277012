#ifndef CASIMIR_H
#define CASIMIR_H

/* Generated by cbindgen from casimir-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum CasimirStatus {
  CASIMIR_STATUS_OK = 0,
  CASIMIR_STATUS_NULL_ARGUMENT = 1,
  CASIMIR_STATUS_INVALID_SIZE = 2,
  CASIMIR_STATUS_UNSUPPORTED_KIND = 3,
  CASIMIR_STATUS_INDEX_OUT_OF_RANGE = 4,
  CASIMIR_STATUS_VERIFICATION_FAILURE = 5,
  CASIMIR_STATUS_INTERNAL_ERROR = 6,
} CasimirStatus;

/**
 * Algebra family selector.
 */
typedef enum CasimirKind {
  /**
   * Strictly upper triangular matrices.
   */
  CASIMIR_KIND_T0 = 0,
  /**
   * Upper triangular matrices.
   */
  CASIMIR_KIND_T = 1,
  /**
   * Traceless upper triangular matrices.
   */
  CASIMIR_KIND_ST = 2,
} CasimirKind;

/**
 * Opaque handle over a computed invariant basis.
 */
typedef struct CasimirBasis CasimirBasis;

/**
 * Rank bookkeeping produced by `casimir_verify`.
 */
typedef struct CasimirCertificate {
  size_t dim;
  size_t coadjoint_rank;
  size_t expected_count;
  size_t jacobian_rank;
  size_t basis_size;
} CasimirCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *casimir_version(void);

/**
 * Builds the closed-form invariant basis of the chosen family and size.
 * On success writes a handle to `out`; release it with `casimir_basis_free`.
 */
enum CasimirStatus casimir_basis_new(enum CasimirKind kind, uint32_t n, struct CasimirBasis **out);

/**
 * Number of elements in the basis. Null handles count zero.
 */
size_t casimir_basis_len(const struct CasimirBasis *basis);

/**
 * Plain-text rendering of element `index` (zero-based), e.g.
 * "x_31*x_42 - x_32*x_41". The string must be freed with
 * `casimir_string_free`.
 */
enum CasimirStatus casimir_basis_element_text(const struct CasimirBasis *basis,
                                              size_t index,
                                              char **out);

/**
 * JSON rendering of the whole basis (kind, n, count, elements). The string
 * must be freed with `casimir_string_free`.
 */
enum CasimirStatus casimir_basis_json(const struct CasimirBasis *basis, char **out);

/**
 * Releases a basis handle. Null is a no-op.
 */
void casimir_basis_free(struct CasimirBasis *basis);

/**
 * Certifies the closed-form basis of the family: symbolic infinitesimal
 * criterion for every element and generator, Jacobian rank equal to the
 * element count, and dim - coadjoint rank equal to that count. On success
 * fills `out` with the rank bookkeeping.
 */
enum CasimirStatus casimir_verify(enum CasimirKind kind,
                                  uint32_t n,
                                  struct CasimirCertificate *out);

/**
 * Number of functionally independent invariants of the family, written to
 * `out`: floor(n/2), floor((n-1)/2)+1 and floor((n-1)/2) for the strict,
 * full and traceless families.
 */
enum CasimirStatus casimir_expected_invariant_count(enum CasimirKind kind, uint32_t n, size_t *out);

/**
 * Releases a string produced by this library. Null is a no-op.
 */
void casimir_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CASIMIR_H */
