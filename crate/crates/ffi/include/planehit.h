#ifndef PLANEHIT_H
#define PLANEHIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>

typedef enum PhErrorCode {
  PH_ERROR_CODE_OK = 0,
  PH_ERROR_CODE_NULL_POINTER = 1,
  PH_ERROR_CODE_INVALID_UTF8 = 2,
  PH_ERROR_CODE_PARSE = 3,
  PH_ERROR_CODE_INVALID_ARGUMENT = 4,
  PH_ERROR_CODE_INDEX_OUT_OF_RANGE = 5,
  PH_ERROR_CODE_LIMIT_EXCEEDED = 6,
  PH_ERROR_CODE_INTERNAL = 7,
  PH_ERROR_CODE_PANIC = 8,
} PhErrorCode;

typedef enum PhTier {
  /*
   The `O(n log^2 n)` pipeline.
   */
  PH_TIER_FAST = 0,
  /*
   Same pipeline covering with every maximal arc.
   */
  PH_TIER_BASELINE = 1,
  /*
   Exhaustive subset search, up to `max_k` points.
   */
  PH_TIER_BRUTE_FORCE = 2,
} PhTier;

typedef enum PhStatus {
  PH_STATUS_OPTIMAL = 0,
  PH_STATUS_INFEASIBLE = 1,
} PhStatus;

/*
 Points and half-planes being assembled or parsed.
 */
typedef struct PhInstance PhInstance;

/*
 A solver answer.
 */
typedef struct PhSolution PhSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or null. Valid until the
 next failing call on the same thread; do not free.
 */
const char *ph_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *ph_version(void);

/*
 An empty instance to be filled with `ph_instance_add_*`.
 */
struct PhInstance *ph_instance_new(void);

/*
 Parses instance JSON into a new handle stored in `*out`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PhErrorCode ph_instance_from_json(const char *json, struct PhInstance **out);

/*
 Appends the point `(x, y)`; coordinates are integers or `a/b` fractions.

 # Safety
 `inst` must come from this library; `x` and `y` must be NUL-terminated.
 */
enum PhErrorCode ph_instance_add_point(struct PhInstance *inst, const char *x, const char *y);

/*
 Appends the half-plane `nx * x + ny * y >= c`.

 # Safety
 `inst` must come from this library; the strings must be NUL-terminated.
 */
enum PhErrorCode ph_instance_add_halfplane(struct PhInstance *inst,
                                           const char *nx,
                                           const char *ny,
                                           const char *c);

/*
 # Safety
 `inst` must be null or come from this library.
 */
size_t ph_instance_num_points(const struct PhInstance *inst);

/*
 # Safety
 `inst` must be null or come from this library.
 */
size_t ph_instance_num_halfplanes(const struct PhInstance *inst);

/*
 Canonical instance JSON, or null on failure. Free with `ph_string_free`.

 # Safety
 `inst` must be null or come from this library.
 */
char *ph_instance_to_json(const struct PhInstance *inst);

/*
 # Safety
 `inst` must be null or come from this library, and not be used after.
 */
void ph_instance_free(struct PhInstance *inst);

/*
 Solves with the chosen tier and stores a new solution in `*out`.
 `max_k` is only read by the brute-force tier.

 # Safety
 `inst` must come from this library and `out` must be a valid pointer.
 */
enum PhErrorCode ph_solve(const struct PhInstance *inst,
                          enum PhTier tier,
                          size_t max_k,
                          struct PhSolution **out);

/*
 # Safety
 `sol` must come from this library.
 */
enum PhStatus ph_solution_status(const struct PhSolution *sol);

/*
 Number of chosen points; 0 for an infeasible instance or a null handle.

 # Safety
 `sol` must be null or come from this library.
 */
size_t ph_solution_size(const struct PhSolution *sol);

/*
 Copies the chosen point indices (ascending) into `buf`, which must hold
 at least `ph_solution_size(sol)` entries.

 # Safety
 `sol` must come from this library and `buf` must be writable for `len`
 entries.
 */
enum PhErrorCode ph_solution_indices(const struct PhSolution *sol, size_t *buf, size_t len);

/*
 Solution JSON; free with `ph_string_free`.

 # Safety
 `sol` must be null or come from this library.
 */
char *ph_solution_to_json(const struct PhSolution *sol);

/*
 # Safety
 `sol` must be null or come from this library, and not be used after.
 */
void ph_solution_free(struct PhSolution *sol);

/*
 # Safety
 `s` must be null or a string returned by this library.
 */
void ph_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANEHIT_H */
