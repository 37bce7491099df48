#ifndef NOTHG2_H
#define NOTHG2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NgStatus {
  NG_STATUS_OK = 0,
  /**
   * Bad expression, manifest or group name.
   */
  NG_STATUS_PARSE_ERROR = 1,
  /**
   * A null pointer or non-UTF-8 string was passed.
   */
  NG_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Exact arithmetic failed, e.g. a division by zero.
   */
  NG_STATUS_MATH_ERROR = 3,
  /**
   * A Rust panic was caught at the boundary.
   */
  NG_STATUS_INTERNAL = 4,
} NgStatus;

typedef enum NgOp {
  NG_OP_ADD = 0,
  NG_OP_SUB = 1,
  NG_OP_MUL = 2,
  NG_OP_DIV = 3,
} NgOp;

/**
 * A rational function over Q(12^(1/3), 3^(1/2)).
 */
typedef struct NgExpr NgExpr;

/**
 * The reports of one verification run, ordered by check id.
 */
typedef struct NgReportList NgReportList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the next
 * failing call on this thread; do not free.
 */
const char *ng_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or came from this library and was not freed before.
 */
void ng_string_free(char *s);

/**
 * Parses `src`, in prefix form or infix, into `*out`.
 *
 * # Safety
 * `src` is a NUL-terminated string and `out` a valid pointer.
 */
enum NgStatus ng_expr_parse(const char *src, struct NgExpr **out);

/**
 * # Safety
 * `e` is null or a live handle from this library.
 */
void ng_expr_free(struct NgExpr *e);

/**
 * Canonical prefix text of `e`, or null for a null handle.
 *
 * # Safety
 * `e` is null or a live handle.
 */
char *ng_expr_to_string(const struct NgExpr *e);

/**
 * # Safety
 * `e` is null or a live handle.
 */
bool ng_expr_is_zero(const struct NgExpr *e);

/**
 * `*out = a op b`.
 *
 * # Safety
 * `a`, `b` are live handles and `out` a valid pointer.
 */
enum NgStatus ng_expr_binary(enum NgOp op,
                             const struct NgExpr *a,
                             const struct NgExpr *b,
                             struct NgExpr **out);

/**
 * Derivative of `e` in the variable named `v`.
 *
 * # Safety
 * `e` is a live handle, `v` a NUL-terminated string, `out` a valid pointer.
 */
enum NgStatus ng_expr_derivative(const struct NgExpr *e, const char *v, struct NgExpr **out);

/**
 * Left-hand side of Noth's equation for `H = h(v)`.
 *
 * # Safety
 * `h` is a live handle, `v` a NUL-terminated string, `out` a valid pointer.
 */
enum NgStatus ng_noth_residual(const struct NgExpr *h, const char *v, struct NgExpr **out);

/**
 * Runs a built-in check group: `all`, `noth`, `dft`, `tensors:<case>`,
 * `symmetry:<1|2>` or `diffeo:<0|1|2>`.
 *
 * # Safety
 * `group` is a NUL-terminated string and `out` a valid pointer.
 */
enum NgStatus ng_verify(const char *group, struct NgReportList **out);

/**
 * Parses a TOML manifest and runs its checks.
 *
 * # Safety
 * `toml` is a NUL-terminated string and `out` a valid pointer.
 */
enum NgStatus ng_manifest_run(const char *toml, struct NgReportList **out);

/**
 * # Safety
 * `l` is null or a live handle.
 */
uintptr_t ng_reports_len(const struct NgReportList *l);

/**
 * Whether every report passed; false for a null handle.
 *
 * # Safety
 * `l` is null or a live handle.
 */
bool ng_reports_all_passed(const struct NgReportList *l);

/**
 * Report `i` as one JSON object, or null when out of range.
 *
 * # Safety
 * `l` is null or a live handle.
 */
char *ng_report_json(const struct NgReportList *l, uintptr_t i);

/**
 * # Safety
 * `l` is null or a live handle.
 */
void ng_reports_free(struct NgReportList *l);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NOTHG2_H */
