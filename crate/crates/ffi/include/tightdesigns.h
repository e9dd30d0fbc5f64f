#ifndef TIGHTDESIGNS_H
#define TIGHTDESIGNS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum TdStatus {
  TdOk = 0,
  TdNullArgument = 1,
  TdBadParameters = 2,
  TdBudgetExhausted = 3,
  TdInternalError = 4,
} TdStatus;

/**
 * Opaque handle holding the certified zero enclosures for one s.
 */
typedef struct TdHermiteTable TdHermiteTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build the Hermite zero table for strength-half `s`; on success writes the
 * new handle into `out`. Free with [`td_table_free`].
 *
 * # Safety
 * `out` must be a valid, writable pointer.
 */
enum TdStatus td_table_new(uint32_t s, struct TdHermiteTable **out);

/**
 * # Safety
 * `table` must come from [`td_table_new`] and not have been freed.
 */
void td_table_free(struct TdHermiteTable *table);

/**
 * Free a string returned by any `*_json` entry point.
 *
 * # Safety
 * `s` must be a pointer previously written by this library and not yet freed.
 */
void td_string_free(char *s);

/**
 * Reproduce the published polynomial and zero tables; JSON report in `out`.
 *
 * # Safety
 * `out` must be a valid, writable pointer.
 */
enum TdStatus td_tables_json(char **out);

/**
 * Feasibility-check the candidate (s, v, k); verdict JSON in `out`.
 * `survivor` is set to 1 when every test passes.
 *
 * # Safety
 * `out` and `survivor` must be valid, writable pointers.
 */
enum TdStatus td_check_candidate_json(uint32_t s,
                                      uint64_t v,
                                      uint64_t k,
                                      int32_t *survivor,
                                      char **out);

/**
 * Exclusion threshold report for `s`, computed from the published
 * constants; JSON in `out`.
 *
 * # Safety
 * `table` must come from [`td_table_new`] with the same `s`; `out` must be
 * a valid, writable pointer.
 */
enum TdStatus td_beta0_json(uint32_t s, const struct TdHermiteTable *table, char **out);

/**
 * Validate the published constants row for `s` against certified suprema.
 * `all_ok` is set to 1 when every bound holds.
 *
 * # Safety
 * `table` must come from [`td_table_new`] with the same `s`; `all_ok` and
 * `out` must be valid, writable pointers.
 */
enum TdStatus td_validate_constants_json(uint32_t s,
                                         const struct TdHermiteTable *table,
                                         int32_t *all_ok,
                                         char **out);

/**
 * Run the exhaustive alpha scan for `s` with threshold `beta0` (a decimal
 * string, e.g. "33.76"). `survivors` receives the survivor count.
 *
 * # Safety
 * `beta0` must be a valid NUL-terminated string; `survivors` and `out`
 * must be valid, writable pointers.
 */
enum TdStatus td_search_json(uint32_t s, const char *beta0, uint64_t *survivors, char **out);

/**
 * Scan `k` in `[k_lo, k_hi]` for integer roots of the strength-8 surface
 * polynomial; hit list JSON in `out`, count in `hits`.
 *
 * # Safety
 * `hits` and `out` must be valid, writable pointers.
 */
enum TdStatus td_s4_scan_json(uint64_t k_lo, uint64_t k_hi, uint64_t *hits, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TIGHTDESIGNS_H */
