#ifndef TENSORCOMM_H
#define TENSORCOMM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Construction used by [`tcm_commutation_matrix`].
typedef enum TcmMethod {
  TCM_METHOD_RULE = 0,
  TCM_METHOD_ELEMENTARY = 1,
  TCM_METHOD_GELL_MANN = 2,
} TcmMethod;

// Result code of every fallible call.
typedef enum TcmStatus {
  TCM_STATUS_OK = 0,
  TCM_STATUS_NULL_POINTER = 1,
  TCM_STATUS_DOMAIN = 2,
  TCM_STATUS_DIMENSION = 3,
  TCM_STATUS_INDEX = 4,
  TCM_STATUS_SIZE = 5,
  TCM_STATUS_DECOMPOSITION = 6,
  TCM_STATUS_BUFFER_TOO_SMALL = 7,
  TCM_STATUS_INTERNAL = 8,
} TcmStatus;

// Opaque rectangular Gell-Mann system.
typedef struct TcmGellMannSystem TcmGellMannSystem;

// Opaque dense complex matrix.
typedef struct TcmMatrix TcmMatrix;

// Opaque structure-constant tensor.
typedef struct TcmStructureConstants TcmStructureConstants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *tcm_last_error_message(void);

// Builds `U_{n⊗p}` and stores a new handle in `*out`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum TcmStatus tcm_commutation_matrix(size_t n,
                                      size_t p,
                                      enum TcmMethod method,
                                      struct TcmMatrix **out);

// Writes the 0-based row index of the 1 in every column of `U_{n⊗p}`
// (`np` values) into `targets`.
//
// # Safety
// `targets` must point to `len` writable `size_t` values.
enum TcmStatus tcm_permutation_targets(size_t n, size_t p, size_t *targets, size_t len);

// Matrix-free `output = U_{n⊗p} · input`. `len` is the number of complex
// entries (`np`); both buffers hold `2 * len` doubles.
//
// # Safety
// `input` must point to `2 * len` readable doubles and `output` to
// `2 * len` writable doubles; the two must not overlap.
enum TcmStatus tcm_apply_swap(size_t n, size_t p, const double *input, double *output, size_t len);

// Number of rows, or 0 for NULL.
//
// # Safety
// `m` must be NULL or a live handle.
size_t tcm_matrix_rows(const struct TcmMatrix *m);

// Number of columns, or 0 for NULL.
//
// # Safety
// `m` must be NULL or a live handle.
size_t tcm_matrix_cols(const struct TcmMatrix *m);

// Entry at 1-based `(i, j)`.
//
// # Safety
// `m` must be a live handle; `re` and `im` must be writable.
enum TcmStatus tcm_matrix_get(const struct TcmMatrix *m,
                              size_t i,
                              size_t j,
                              double *re,
                              double *im);

// Copies all entries, row-major and interleaved, into `buf` (`len`
// doubles, at least `2 * rows * cols`).
//
// # Safety
// `m` must be a live handle and `buf` must point to `len` writable doubles.
enum TcmStatus tcm_matrix_copy(const struct TcmMatrix *m, double *buf, size_t len);

// # Safety
// `m` must be NULL or a handle not yet freed.
void tcm_matrix_free(struct TcmMatrix *m);

// Builds the `n×p` Gell-Mann system.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum TcmStatus tcm_gellmann_new(size_t n, size_t p, struct TcmGellMannSystem **out);

// Number of matrices (`np - 1`), or 0 for NULL.
//
// # Safety
// `sys` must be NULL or a live handle.
size_t tcm_gellmann_len(const struct TcmGellMannSystem *sys);

// Copies `Λ_a` (1-based `a`) into a new matrix handle.
//
// # Safety
// `sys` must be a live handle and `out` writable.
enum TcmStatus tcm_gellmann_lambda(const struct TcmGellMannSystem *sys,
                                   size_t a,
                                   struct TcmMatrix **out);

// Copies the padded identity into a new matrix handle.
//
// # Safety
// `sys` must be a live handle and `out` writable.
enum TcmStatus tcm_gellmann_padded_identity(const struct TcmGellMannSystem *sys,
                                            struct TcmMatrix **out);

// # Safety
// `sys` must be NULL or a handle not yet freed.
void tcm_gellmann_free(struct TcmGellMannSystem *sys);

// Extracts the structure constants of the `n×p` system (`p >= n`).
// Fails with `DECOMPOSITION` if some pair does not expand within `tol`.
//
// # Safety
// `out` must be writable.
enum TcmStatus tcm_structure_constants_new(size_t n,
                                           size_t p,
                                           double tol,
                                           struct TcmStructureConstants **out);

// `f[a, b, c]` with 1-based indices.
//
// # Safety
// `f` must be a live handle and `value` writable.
enum TcmStatus tcm_structure_constant(const struct TcmStructureConstants *f,
                                      size_t a,
                                      size_t b,
                                      size_t c,
                                      double *value);

// Largest expansion residual over all pairs, or NaN for NULL.
//
// # Safety
// `f` must be NULL or a live handle.
double tcm_structure_constants_max_residual(const struct TcmStructureConstants *f);

// # Safety
// `f` must be NULL or a handle not yet freed.
void tcm_structure_constants_free(struct TcmStructureConstants *f);

// Runs the full verification over `2..=n_max × 2..=p_max`. Stores the CLI
// exit code (0 pass, 1 violation) in `*exit_code` and, when `json` is not
// NULL, a JSON report that must be released with [`tcm_string_free`].
//
// # Safety
// `exit_code` must be writable; `json` must be NULL or writable.
enum TcmStatus tcm_verify(size_t n_max, size_t p_max, double tol, int32_t *exit_code, char **json);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void tcm_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TENSORCOMM_H */
