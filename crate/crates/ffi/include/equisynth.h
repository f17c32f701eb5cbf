#ifndef EQUISYNTH_H
#define EQUISYNTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes, numbered like the command-line exit codes.
 */
typedef enum {
  ES_STATUS_OK = 0,
  ES_STATUS_NOT_FOUND = 1,
  ES_STATUS_INVALID_INPUT = 2,
  ES_STATUS_RESOURCE_CAP = 3,
  ES_STATUS_VERIFICATION_FAILED = 4,
  ES_STATUS_NULL_POINTER = 5,
  ES_STATUS_PANIC = 6,
} EsStatus;

/**
 * A communication graph with the epistemic game built over it.
 */
typedef struct EsEpistemic EsEpistemic;

/**
 * A concurrent game.
 */
typedef struct EsGame EsGame;

/**
 * A found equilibrium: its payoff, main outcome and distributed profile.
 */
typedef struct EsSolveResult EsSolveResult;

/**
 * Copy of the last error message on this thread, or null if the last call
 * succeeded.
 */
char *es_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void es_string_free(char *s);

/**
 * Parses a game from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
EsStatus es_game_from_json(const char *json, EsGame **out);

/**
 * The bundled five-player example game.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
EsStatus es_game_bundled(EsGame **out);

/**
 * # Safety
 * `game` must be null or a handle not yet freed.
 */
void es_game_free(EsGame *game);

/**
 * # Safety
 * `game` must be null or a live handle.
 */
size_t es_game_num_players(const EsGame *game);

/**
 * Builds the epistemic game over a communication graph. `comm` is either a
 * bundled graph name (`g1`, `g2`, `g3`, `edgeless`, `complete`) or a JSON
 * description. A `state_cap` of 0 keeps the default.
 *
 * # Safety
 * `game` must be a live handle, `comm` a NUL-terminated string and `out` a
 * valid pointer.
 */
EsStatus es_epistemic_build(const EsGame *game,
                            const char *comm,
                            size_t state_cap,
                            EsEpistemic **out);

/**
 * # Safety
 * `eg` must be null or a handle not yet freed.
 */
void es_epistemic_free(EsEpistemic *eg);

/**
 * # Safety
 * `eg` must be null or a live handle.
 */
size_t es_epistemic_num_eve(const EsEpistemic *eg);

/**
 * # Safety
 * `eg` must be null or a live handle.
 */
size_t es_epistemic_num_adam(const EsEpistemic *eg);

/**
 * Searches for an equilibrium whose payoff satisfies `predicate`.
 * `main_inf` is null or a comma-separated list of vertices the main outcome
 * must visit infinitely often. Returns `Ok` with `*out` set, or `NotFound`
 * with `*out` left null.
 *
 * # Safety
 * Handles must be live, strings NUL-terminated and `out` a valid pointer.
 */
EsStatus es_solve(const EsGame *game,
                  const EsEpistemic *eg,
                  const char *predicate,
                  const char *main_inf,
                  EsSolveResult **out);

/**
 * Payoff of the equilibrium, e.g. `(0,0,1,1,1)`. Free with `es_string_free`.
 * # Safety
 * `r` must be null or a live handle.
 */
char *es_solve_result_payoff(const EsSolveResult *r);

/**
 * Main outcome as a lasso, e.g. `(v0 v1)^ω`. Free with `es_string_free`.
 * # Safety
 * `r` must be null or a live handle.
 */
char *es_solve_result_outcome(const EsSolveResult *r);

/**
 * Profile as JSON, accepted by `es_verify_profile` and the command line.
 * Free with `es_string_free`.
 * # Safety
 * `r` must be null or a live handle.
 */
char *es_solve_result_profile_json(const EsSolveResult *r);

/**
 * # Safety
 * `r` must be null or a handle not yet freed.
 */
void es_solve_result_free(EsSolveResult *r);

/**
 * Checks a profile: normed up to the default depth, resistant against its
 * main payoff, and that payoff satisfies `predicate`. Returns `Ok` or
 * `VerificationFailed` with the problems as the last error.
 *
 * # Safety
 * Handles must be live and strings NUL-terminated.
 */
EsStatus es_verify_profile(const EsGame *game,
                           const EsEpistemic *eg,
                           const char *profile_json,
                           const char *predicate);

/**
 * Version string of the library. Static; do not free.
 */
const char *es_version(void);

#endif  /* EQUISYNTH_H */
