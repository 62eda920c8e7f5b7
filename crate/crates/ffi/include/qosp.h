/* C interface to the qosp exact-arithmetic kernel. Generated by cbindgen; do not edit. */

#ifndef QOSP_H
#define QOSP_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes.
typedef enum QospStatus {
  QOSP_STATUS_OK = 0,
  // The call completed but a verification did not pass.
  QOSP_STATUS_CHECK_FAILED = 1,
  QOSP_STATUS_NULL_POINTER = 2,
  QOSP_STATUS_INVALID_ARGUMENT = 3,
  QOSP_STATUS_PARSE = 4,
  // Division by zero, non-invertible values, missing limits.
  QOSP_STATUS_ARITHMETIC = 5,
  QOSP_STATUS_DIMENSION_MISMATCH = 6,
  QOSP_STATUS_IO = 7,
  // A Rust panic was caught at the boundary.
  QOSP_STATUS_INTERNAL = 8,
} QospStatus;

// An exact graded matrix.
typedef struct QospMatrix QospMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds one of the named matrices: `kr`, `m`, `transformed`, `sjr`, `fj`,
// `fs`, `lplus`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum QospStatus qosp_matrix_named(const char *name, struct QospMatrix **out);

// Parses the JSON layout produced by `qosp_matrix_to_json`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum QospStatus qosp_matrix_from_json(const char *json, struct QospMatrix **out);

// Releases a matrix. Null is ignored.
//
// # Safety
// `m` must come from this library and not have been freed.
void qosp_matrix_free(struct QospMatrix *m);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum QospStatus qosp_matrix_dim(const struct QospMatrix *m, size_t *out);

// Canonical text of entry `(row, col)`, both 0-based.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum QospStatus qosp_matrix_entry(const struct QospMatrix *m, size_t row, size_t col, char **out);

// Substitutes an exact rational (`"1/2"`, `"-3"`) for `s`, `theta` or `xi`.
//
// # Safety
// `m` must be a live handle, the strings NUL-terminated, `out` writable.
enum QospStatus qosp_matrix_substitute(const struct QospMatrix *m,
                                       const char *var,
                                       const char *value,
                                       struct QospMatrix **out);

// Entrywise limit `s -> 1`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum QospStatus qosp_matrix_limit_at_one(const struct QospMatrix *m, struct QospMatrix **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum QospStatus qosp_matrix_mul(const struct QospMatrix *a,
                                const struct QospMatrix *b,
                                struct QospMatrix **out);

// Exact equality, including the parity assignment.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum QospStatus qosp_matrix_equal(const struct QospMatrix *a,
                                  const struct QospMatrix *b,
                                  bool *out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum QospStatus qosp_matrix_to_json(const struct QospMatrix *m, char **out);

// Graded Yang-Baxter equation for `r` acting on `V ⊗ V`, where `V` has the
// `leg_dim` parities in `leg_parity` (each 0 or 1). Returns `QOSP_STATUS_OK` when
// it holds and `QOSP_STATUS_CHECK_FAILED` otherwise.
//
// # Safety
// `r` must be a live handle; `leg_parity` must point to `leg_dim` bytes.
enum QospStatus qosp_check_gybe(const struct QospMatrix *r,
                                const uint8_t *leg_parity,
                                size_t leg_dim);

// Runs a verification suite (`all`, `golden`, `ybe`, ...) with default
// options and returns its JSON report. `QOSP_STATUS_CHECK_FAILED` signals a
// failing check; the report is written in that case too.
//
// # Safety
// `suite` must be NUL-terminated; `report_json` must be writable.
enum QospStatus qosp_verify(const char *suite, char **report_json);

// Solves for the super-twist series to `order` on pairs like `"1:1/2,1:1"`
// and returns the solution as JSON.
//
// # Safety
// `pairs` must be NUL-terminated; `solution_json` must be writable.
enum QospStatus qosp_solve_phi(uint32_t order, const char *pairs, char **solution_json);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void qosp_string_free(char *s);

// Message for the most recent failure on this thread, or an empty string.
// Valid until the next library call on the same thread.
const char *qosp_last_error(void);

// Library version, static storage.
const char *qosp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QOSP_H */
