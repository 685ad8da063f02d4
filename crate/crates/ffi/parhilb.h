/* C interface for the parhilb engine. */

#ifndef PARHILB_H
#define PARHILB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define PHS_OK 0

#define PHS_ERR_PARSE 1

#define PHS_ERR_PRECONDITION 2

#define PHS_ERR_INTERNAL 3

/**
 * Opaque handle to a truncated parabolic Poincaré series.
 */
typedef struct PhsSeries PhsSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Releases a string returned by this library.  Null is a no-op.
 *
 * # Safety
 * `text` must come from this library and not have been freed already.
 */
void phs_string_free(char *text);

/**
 * Number of cells of the punctual scheme at `v_json`.
 *
 * # Safety
 * `v_json` must be a valid NUL-terminated string; `out` must be writable.
 */
int32_t phs_cell_count(const char *v_json, uint64_t *out);

/**
 * Poincaré polynomial of the punctual scheme at `v_json`, e.g. `"1+z^2"`.
 *
 * # Safety
 * As [`phs_cell_count`]; `out` receives an owned string on success.
 */
int32_t phs_punctual_poincare(const char *v_json, char **out);

/**
 * Class-count polynomial in `L` of the punctual scheme at `v_json`.
 *
 * # Safety
 * As [`phs_punctual_poincare`].
 */
int32_t phs_punctual_motive(const char *v_json, char **out);

/**
 * The commutation constant μ of a generator `u_json`.
 *
 * # Safety
 * As [`phs_cell_count`].
 */
int32_t phs_mu(const char *u_json, int64_t *out);

/**
 * Builds the truncated parabolic Poincaré series.  `x_betti` points at 5
 * surface Betti numbers, `d_betti` at 3 divisor ones; the window is
 * `lo..hi` with `lo < 0 < hi`; `x0_max` and `cap` are the truncation
 * bounds.  Returns null on invalid input.
 *
 * # Safety
 * `x_betti` and `d_betti` must point at arrays of the stated lengths.
 */
struct PhsSeries *phs_parabolic_series_new(const uint32_t *x_betti,
                                           const uint32_t *d_betti,
                                           int64_t lo,
                                           int64_t hi,
                                           uint32_t x0_max,
                                           uint32_t cap);

/**
 * Coefficient of the series at `v_json` as a polynomial string in `z`.
 *
 * # Safety
 * `series` must be a live handle from [`phs_parabolic_series_new`].
 */
int32_t phs_series_coefficient(const struct PhsSeries *series, const char *v_json, char **out);

/**
 * Full series as JSON.
 *
 * # Safety
 * As [`phs_series_coefficient`].
 */
int32_t phs_series_json(const struct PhsSeries *series, char **out);

/**
 * Releases a series handle.  Null is a no-op.
 *
 * # Safety
 * `series` must come from [`phs_parabolic_series_new`] and not have been
 * freed already.
 */
void phs_series_free(struct PhsSeries *series);

/**
 * Runs the dimension-estimate verification up to `bound`.  Returns 0 when
 * every case passes, 2 on any violation.
 */
int32_t phs_verify_lemmas(int64_t bound);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARHILB_H */
