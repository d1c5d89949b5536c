#ifndef FLATLIM_H
#define FLATLIM_H

/* Generated by cbindgen from the flatlim-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The call succeeded.
 */
#define FLATLIM_OK 0

/**
 * A required pointer argument was NULL.
 */
#define FLATLIM_ERR_NULL_ARGUMENT -1

/**
 * A string argument was not valid UTF-8.
 */
#define FLATLIM_ERR_INVALID_UTF8 -2

/**
 * The field description was not "q" or "p=<prime>".
 */
#define FLATLIM_ERR_BAD_FIELD -3

/**
 * A point value did not parse as an integer or a rational "a/b".
 */
#define FLATLIM_ERR_BAD_POINTS -4

/**
 * The certification pipeline itself failed (for example, a saturation
 * exceeded its step cap); the instance is neither certified nor rejected.
 */
#define FLATLIM_ERR_COMPUTATION -5

/**
 * The flat limit is the extremal multiple line.
 */
#define FLATLIM_VERDICT_EXTREMAL_LIMIT 0

/**
 * The limit is the extremal line plus an embedded point scheme.
 */
#define FLATLIM_VERDICT_EMBEDDED_POINTS 2

/**
 * The input was rejected (too few points, duplicates, characteristic 2/3).
 */
#define FLATLIM_VERDICT_REJECTED 3

/**
 * An opaque certification report.
 */
typedef struct FlatlimReport FlatlimReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Certifies the flat limit of the disjoint-line configuration at the
 * given points.
 *
 * `points` is a comma-separated list of values, for example "0,1,3";
 * rationals like "-1/2" are allowed. `field` is "q" for the rationals or
 * "p=<prime>" for a prime field. On success writes a report handle to
 * `out` and returns `FLATLIM_OK`; the caller owns the handle and must
 * release it with [`flatlim_report_free`]. Inputs the pipeline rejects
 * (fewer than two points, duplicates, characteristic 2 or 3) still
 * produce a report, carrying the rejected verdict and the reason.
 *
 * # Safety
 * `points` and `field` must be NUL-terminated strings valid for the
 * duration of the call, and `out` must be a valid writable pointer.
 */
int32_t flatlim_certify(const char *points, const char *field, struct FlatlimReport **out);

/**
 * Returns the report's verdict as one of the `FLATLIM_VERDICT_*` codes,
 * or `FLATLIM_ERR_NULL_ARGUMENT` for a NULL handle.
 *
 * # Safety
 * `report` must be NULL or a handle from [`flatlim_certify`] that has not
 * been freed.
 */
int32_t flatlim_report_verdict(const struct FlatlimReport *report);

/**
 * Returns the length of the embedded point scheme: 0 unless the verdict
 * is embedded points, -1 for a NULL handle.
 *
 * # Safety
 * `report` must be NULL or a handle from [`flatlim_certify`] that has not
 * been freed.
 */
int64_t flatlim_report_embedded_length(const struct FlatlimReport *report);

/**
 * Renders the report as pretty-printed JSON (schema_version "1"), or NULL
 * for a NULL handle. The caller frees the string with
 * [`flatlim_string_free`].
 *
 * # Safety
 * `report` must be NULL or a handle from [`flatlim_certify`] that has not
 * been freed.
 */
char *flatlim_report_json(const struct FlatlimReport *report);

/**
 * Renders the report in the human-readable multi-line form the CLI
 * prints, or NULL for a NULL handle. The caller frees the string with
 * [`flatlim_string_free`].
 *
 * # Safety
 * `report` must be NULL or a handle from [`flatlim_certify`] that has not
 * been freed.
 */
char *flatlim_report_text(const struct FlatlimReport *report);

/**
 * Releases a report handle. NULL is a no-op.
 *
 * # Safety
 * `report` must be NULL or a handle from [`flatlim_certify`] that has not
 * already been freed.
 */
void flatlim_report_free(struct FlatlimReport *report);

/**
 * Releases a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library that has not
 * already been freed.
 */
void flatlim_string_free(char *s);

/**
 * Returns the error message from the most recent failing call on this
 * thread, or NULL if it succeeded. The caller frees the string with
 * [`flatlim_string_free`].
 */
char *flatlim_last_error(void);

/**
 * Returns the constant c_d = C(d-2) (a Catalan number), which scales the
 * leading coefficient of the certificate form P, as a decimal string.
 * NULL when d < 2. The caller frees the string with
 * [`flatlim_string_free`].
 */
char *flatlim_catalan(uint32_t d);

/**
 * The library version as a static string; do not free.
 */
const char *flatlim_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FLATLIM_H */
