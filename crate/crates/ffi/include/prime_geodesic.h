#ifndef PRIME_GEODESIC_H
#define PRIME_GEODESIC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PG_STATUS_NULL_POINTER = 1,
  /**
   * An argument lies outside the domain of the operation.
   */
  PG_STATUS_DOMAIN = 2,
  /**
   * The discriminant is a perfect square.
   */
  PG_STATUS_PERFECT_SQUARE = 3,
  PG_STATUS_PARSE = 4,
  PG_STATUS_IO = 5,
  /**
   * The table does not cover the requested point or pipeline.
   */
  PG_STATUS_RANGE = 6,
  /**
   * An internal panic was caught at the boundary.
   */
  PG_STATUS_PANIC = 7,
} PgStatus;

/**
 * Counting method for [`pg_table_psi`].
 */
typedef enum PgMethod {
  /**
   * Sum of `sqrt(n^2 - 4) L(1, n^2 - 4)` over traces.
   */
  PG_METHOD_LVALUE = 0,
  /**
   * Class numbers and fundamental units.
   */
  PG_METHOD_ORACLE = 1,
} PgMethod;

/**
 * Opaque table of traces, classes and L-values up to a norm bound.
 */
typedef struct PgTable PgTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *pg_version(void);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len - 1` bytes). Returns the full message length, or 0 when
 * there is no error. `buf` may be null to query the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t pg_last_error_message(char *buf, size_t len);

/**
 * Builds a table for norms up to `x_max`. With `with_lvalues` false only the
 * class-number pipeline is computed.
 *
 * # Safety
 * `out` must be a valid pointer; on success it receives a handle to free
 * with [`pg_table_free`].
 */
enum PgStatus pg_table_new(double x_max, bool with_lvalues, struct PgTable **out);

/**
 * Releases a table; null is ignored.
 *
 * # Safety
 * `table` must come from [`pg_table_new`] and not be used afterwards.
 */
void pg_table_free(struct PgTable *table);

/**
 * `Psi(x)` from a table.
 *
 * # Safety
 * `table` must be a live handle and `out` a valid pointer.
 */
enum PgStatus pg_table_psi(const struct PgTable *table,
                           double x,
                           enum PgMethod method,
                           double *out);

/**
 * Number of primitive classes of norm at most `x`.
 *
 * # Safety
 * `table` must be a live handle and `out` a valid pointer.
 */
enum PgStatus pg_table_pi(const struct PgTable *table, double x, uint64_t *out);

/**
 * Largest trace in the table.
 *
 * # Safety
 * `table` must be a live handle and `out` a valid pointer.
 */
enum PgStatus pg_table_max_trace(const struct PgTable *table, uint64_t *out);

/**
 * `L(1, delta)` for a non-square nonzero discriminant.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PgStatus pg_l_one(int64_t delta, double *out);

/**
 * `L(s, chi_D)` at `s = re + i im`; writes `[re, im]` to `out`.
 *
 * # Safety
 * `out` must point to two writable doubles.
 */
enum PgStatus pg_dirichlet_l(double re, double im, int64_t d, double (*out)[2]);

/**
 * Narrow class number of the positive discriminant `d`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PgStatus pg_class_number(int64_t d, uint64_t *out);

/**
 * Kloosterman sum `S(m, n; q)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PgStatus pg_kloosterman(int64_t m, int64_t n, uint64_t q, double *out);

/**
 * Norm of a hyperbolic class of trace `n > 2`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PgStatus pg_trace_to_norm(uint64_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRIME_GEODESIC_H */
