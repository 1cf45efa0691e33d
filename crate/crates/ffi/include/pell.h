#ifndef PELL_H
#define PELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PellStatus {
  PELL_STATUS_OK = 0,
  PELL_STATUS_NULL_POINTER = 1,
  PELL_STATUS_INVALID_UTF8 = 2,
  PELL_STATUS_PARSE_ERROR = 3,
  PELL_STATUS_INVALID_INPUT = 4,
  PELL_STATUS_NO_SOLUTION = 5,
  PELL_STATUS_LIMIT_EXCEEDED = 6,
  PELL_STATUS_INDEX_OUT_OF_RANGE = 7,
  PELL_STATUS_PANIC = 8,
} PellStatus;

// Continued fraction of a quadratic irrational.
typedef struct PellCf PellCf;

// A cycle of reduced forms.
typedef struct PellCycle PellCycle;

// A binary quadratic form `(a, b, c)`.
typedef struct PellForm PellForm;

// An ordered list of solutions of `x^2 - d y^2 = N`.
typedef struct PellSolutions PellSolutions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or an empty string.
// The pointer stays valid until the next call into this library.
const char *pell_last_error(void);

// Static name of a status code.
const char *pell_status_name(enum PellStatus status);

// # Safety
// `s` must be null or a string previously returned by this library.
void pell_string_free(char *s);

// Expands `(p0 + sqrt d) / q0`. Pass `p0 = "0"`, `q0 = "1"` for `sqrt d`.
// `max_period = 0` selects the default limit.
//
// # Safety
// String arguments must be valid NUL-terminated strings; `out` must be writable.
enum PellStatus pell_cf_new(const char *d,
                            const char *p0,
                            const char *q0,
                            size_t max_period,
                            struct PellCf **out);

// # Safety
// `cf` must be null or a live handle.
void pell_cf_free(struct PellCf *cf);

// Writes the preperiod length (excluding `a0`) and the period length.
//
// # Safety
// `cf` must be a live handle; out-pointers must be writable.
enum PellStatus pell_cf_lengths(const struct PellCf *cf, size_t *preperiod, size_t *period);

// Partial quotient `a_i` of the expansion, `i = 0` being the integer part.
// Indices past the preperiod wrap around the period.
//
// # Safety
// `cf` must be a live handle; `out` must be writable.
enum PellStatus pell_cf_term(const struct PellCf *cf, size_t i, char **out);

// Renders the expansion as `[a0; overline(...)]`.
//
// # Safety
// `cf` must be a live handle; `out` must be writable.
enum PellStatus pell_cf_to_string(const struct PellCf *cf, char **out);

// First `count` solutions of `x^2 - d y^2 = n` for `n` in {1, -1, 4, -4}.
//
// # Safety
// `d` must be a valid string; `out` must be writable.
enum PellStatus pell_solve(const char *d,
                           int32_t n,
                           size_t count,
                           size_t max_period,
                           struct PellSolutions **out);

// # Safety
// `s` must be null or a live handle.
void pell_solutions_free(struct PellSolutions *s);

// Number of solutions held, or 0 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
size_t pell_solutions_len(const struct PellSolutions *s);

// Writes solution `i` (0-based) as decimal strings.
//
// # Safety
// `s` must be a live handle; out-pointers must be writable.
enum PellStatus pell_solutions_get(const struct PellSolutions *s, size_t i, char **x, char **y);

// Sets `valid` to whether `x^2 - d y^2 = n`.
//
// # Safety
// String arguments must be valid; `valid` must be writable.
enum PellStatus pell_verify(const char *d, int64_t n, const char *x, const char *y, bool *valid);

// # Safety
// String arguments must be valid; `out` must be writable.
enum PellStatus pell_form_new(const char *a, const char *b, const char *c, struct PellForm **out);

// # Safety
// `f` must be null or a live handle.
void pell_form_free(struct PellForm *f);

// Coefficient 0, 1 or 2 (`a`, `b`, `c`) as a decimal string.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum PellStatus pell_form_coefficient(const struct PellForm *f, size_t which, char **out);

// Discriminant `b^2 - 4ac`.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum PellStatus pell_form_discriminant(const struct PellForm *f, char **out);

// Reduces an indefinite form; writes a new handle and the number of steps.
//
// # Safety
// `f` must be a live handle; out-pointers must be writable.
enum PellStatus pell_form_reduce(const struct PellForm *f, struct PellForm **out, size_t *steps);

// Cycle of a reduced form with `a > 0`; `proper` selects the proper cycle.
//
// # Safety
// `f` must be a live handle; `out` must be writable.
enum PellStatus pell_form_cycle(const struct PellForm *f, bool proper, struct PellCycle **out);

// # Safety
// `c` must be null or a live handle.
void pell_cycle_free(struct PellCycle *c);

// # Safety
// `c` must be null or a live handle.
size_t pell_cycle_len(const struct PellCycle *c);

// Copies form `i` of the cycle into a new handle.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum PellStatus pell_cycle_get(const struct PellCycle *c, size_t i, struct PellForm **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PELL_H */
