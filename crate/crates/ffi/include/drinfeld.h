#ifndef DRINFELD_H
#define DRINFELD_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every exported call.
 */
typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_INPUT = 2,
  DL_STATUS_PARSE = 3,
  DL_STATUS_ARITHMETIC = 4,
  DL_STATUS_HYPOTHESIS = 5,
  DL_STATUS_RESOURCE = 6,
  DL_STATUS_CONTRACT = 7,
  DL_STATUS_IO = 8,
  DL_STATUS_PANIC = 9,
} DlStatus;

/**
 * Outcome of [`dl_torsion_status`].
 */
typedef enum DlTorsion {
  DL_TORSION_TORSION = 0,
  DL_TORSION_NON_TORSION_CERTIFIED = 1,
  DL_TORSION_UNKNOWN = 2,
} DlTorsion;

/**
 * Opaque Drinfeld module.
 */
typedef struct DlModule DlModule;

/**
 * Opaque algebraic point over F_q(T).
 */
typedef struct DlPoint DlPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *dl_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void dl_string_free(char *s);

/**
 * The Carlitz module Φ(T) = T + τ over F_q.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_module_carlitz(uint32_t q, struct DlModule **out);

/**
 * Parses a module description in TOML (`q = 2`, `coeffs = ["T", "1"]`).
 *
 * # Safety
 * `toml` must be a nul-terminated string and `out` writable.
 */
enum DlStatus dl_module_from_toml(const char *toml, struct DlModule **out);

/**
 * # Safety
 * `m` must be null or a live handle from this library.
 */
void dl_module_free(struct DlModule *m);

/**
 * Parses the minimal polynomial of a point, e.g. `"X^2 + X + T"`.
 *
 * # Safety
 * `minpoly` must be a nul-terminated string and `out` writable.
 */
enum DlStatus dl_point_parse(uint32_t q, const char *minpoly, struct DlPoint **out);

/**
 * # Safety
 * `x` must be null or a live handle from this library.
 */
void dl_point_free(struct DlPoint *x);

/**
 * Weil height of a point as an exact rational string.
 *
 * # Safety
 * `x` must be a live handle and `out` writable.
 */
enum DlStatus dl_point_height(const struct DlPoint *x, char **out);

/**
 * Height of a module, the maximum height of its coefficients.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
enum DlStatus dl_module_height(const struct DlModule *m, char **out);

/**
 * Certified enclosure [lower, upper] of the canonical height at the given depth.
 *
 * # Safety
 * Handles must be live and both out pointers writable.
 */
enum DlStatus dl_canonical_height(const struct DlModule *m,
                                  const struct DlPoint *x,
                                  uint32_t depth,
                                  char **lower,
                                  char **upper);

/**
 * Whether the monic irreducible `l` is a supersingular prime of `m`.
 *
 * # Safety
 * `m` must be live, `l` nul-terminated and `out` writable.
 */
enum DlStatus dl_is_supersingular(const struct DlModule *m, const char *l, bool *out);

/**
 * Number of monic irreducibles of degree n over F_q, as a decimal string.
 *
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_count_irreducibles(uint32_t q, size_t n, char **out);

/**
 * Torsion search up to degree `search`, then certification at `depth`.
 * `witness` receives the annihilator for torsion points and the lower end
 * of the height interval otherwise (null when nothing was certified).
 *
 * # Safety
 * Handles must be live and both out pointers writable.
 */
enum DlStatus dl_torsion_status(const struct DlModule *m,
                                const struct DlPoint *x,
                                size_t search,
                                uint32_t depth,
                                enum DlTorsion *kind,
                                char **witness);

/**
 * Supersingular census for N = 1..=n_max, one JSON object per line.
 * `r` and `c1` are rationals such as `"1/2"`.
 *
 * # Safety
 * `m` must be live, `r` and `c1` nul-terminated, `out` writable.
 */
enum DlStatus dl_density_report_jsonl(const struct DlModule *m,
                                      size_t n_max,
                                      const char *r,
                                      const char *c1,
                                      size_t eta,
                                      size_t workers,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DRINFELD_H */
