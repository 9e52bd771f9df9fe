#ifndef ZASSENHAUS_H
#define ZASSENHAUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum ZsStatus {
  ZS_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  ZS_STATUS_NULL_POINTER = 1,
  /**
   * Arguments outside the documented domain.
   */
  ZS_STATUS_CONTRACT = 2,
  ZS_STATUS_NOT_INVERTIBLE = 3,
  /**
   * A computed quantity violated an expected integrality or sign.
   */
  ZS_STATUS_DATA = 4,
  /**
   * The request exceeds a size limit.
   */
  ZS_STATUS_RESOURCE = 5,
  ZS_STATUS_UNSUPPORTED = 6,
  /**
   * A string argument was not valid UTF-8.
   */
  ZS_STATUS_INVALID_UTF8 = 7,
  /**
   * An internal panic was caught at the boundary.
   */
  ZS_STATUS_PANIC = 8,
} ZsStatus;

/**
 * Group families accepted by [`zs_series_new`].
 */
typedef enum ZsFamily {
  /**
   * Free pro-p of rank `param`.
   */
  ZS_FAMILY_FREE = 0,
  /**
   * Demushkin of rank `param`.
   */
  ZS_FAMILY_DEMUSHKIN = 1,
  /**
   * Free product of `param` copies of `C_p`.
   */
  ZS_FAMILY_FREE_PRODUCT_CYCLIC = 2,
  /**
   * `Z_2^param ⋊ C_2`.
   */
  ZS_FAMILY_SUPERPYTHAGOREAN = 3,
  /**
   * Free product of `C_p` and a free pro-p group of rank `param`.
   */
  ZS_FAMILY_CYCLIC_FREE = 4,
} ZsFamily;

/**
 * Which row of a dimension table to read.
 */
typedef enum ZsDimsKind {
  /**
   * Log coefficients `b_n` (rationals, printed as `a/b`).
   */
  ZS_DIMS_KIND_B = 0,
  /**
   * `w_n`.
   */
  ZS_DIMS_KIND_W = 1,
  /**
   * `c_n`.
   */
  ZS_DIMS_KIND_C = 2,
} ZsDimsKind;

/**
 * The `b`, `w`, `c` tables of a series.
 */
typedef struct ZsDims ZsDims;

/**
 * A finite group given by its multiplication table.
 */
typedef struct ZsGroup ZsGroup;

/**
 * A truncated Hilbert-Poincaré series.
 */
typedef struct ZsSeries ZsSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. Owned by the
 * library; do not free.
 */
const char *zs_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void zs_string_free(char *s);

/**
 * Series of a family to order `order`.
 */
enum ZsStatus zs_series_new(enum ZsFamily family,
                            uint64_t p,
                            uint32_t param,
                            size_t order,
                            struct ZsSeries **out);

/**
 * Series of a free product of Demushkin groups of the given ranks and a
 * free group of rank `free_rank`.
 */
enum ZsStatus zs_series_new_mixed(uint64_t p,
                                  const uint32_t *demushkin_ranks,
                                  size_t count,
                                  uint32_t free_rank,
                                  size_t order,
                                  struct ZsSeries **out);

enum ZsStatus zs_series_order(const struct ZsSeries *series, size_t *out);

/**
 * Coefficient of `t^n` as a decimal string (`a/b` if not an integer).
 */
enum ZsStatus zs_series_coeff(const struct ZsSeries *series, size_t n, char **out);

void zs_series_free(struct ZsSeries *series);

/**
 * Dimension tables for `n = 1..=order`.
 */
enum ZsStatus zs_dims_new(const struct ZsSeries *series,
                          uint64_t p,
                          size_t order,
                          struct ZsDims **out);

/**
 * Entry `n` (1-based) of the chosen table as a decimal string.
 */
enum ZsStatus zs_dims_get(const struct ZsDims *dims, enum ZsDimsKind kind, size_t n, char **out);

void zs_dims_free(struct ZsDims *dims);

/**
 * Builds a group from a description such as `d4`, `cyclic:8`,
 * `abelian:2,2`, `dihedral:8`, `unipotent:3:3` or `semidirect:2:1`.
 */
enum ZsStatus zs_group_new(const char *spec, struct ZsGroup **out);

enum ZsStatus zs_group_order(const struct ZsGroup *group, size_t *out);

/**
 * `|Aut(G)|` as a decimal string.
 */
enum ZsStatus zs_group_automorphisms(const struct ZsGroup *group, char **out);

/**
 * Writes `c_1..c_len` of the Zassenhaus filtration at `p` into `dims`.
 */
enum ZsStatus zs_group_zassenhaus_dims(const struct ZsGroup *group,
                                       uint64_t p,
                                       uint32_t *dims,
                                       size_t len);

void zs_group_free(struct ZsGroup *group);

/**
 * `ν(K, G)` for a degree-`n` extension `K / Q_p`; `q = 0` means `K` has no
 * `p`-th roots of unity. The relation case is chosen from `(n, q)` with `f = 2`.
 */
enum ZsStatus zs_count_extensions(uint64_t p,
                                  uint32_t n,
                                  uint64_t q,
                                  const struct ZsGroup *group,
                                  char **out);

/**
 * `ν(K, U_3(F_p))` from the closed form.
 */
enum ZsStatus zs_count_u3(uint64_t p, uint32_t n, uint64_t q, char **out);

/**
 * `D_4`-extensions of a SAP field with `n` orderings.
 */
enum ZsStatus zs_count_sap(uint64_t n, char **out);

/**
 * `D_4`-extensions of `Q_p`.
 */
enum ZsStatus zs_count_d4_local(uint64_t p, uint64_t *out);

/**
 * Runs built-in check `id`; `passed` receives the outcome and `detail`, if
 * non-null, a description.
 */
enum ZsStatus zs_verify(uint32_t id, bool *passed, char **detail);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZASSENHAUS_H */
