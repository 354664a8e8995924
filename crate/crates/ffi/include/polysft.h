#ifndef POLYSFT_H
#define POLYSFT_H

#pragma once

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every exported call.
 */
typedef enum PsStatus {
  /**
   * Success, a witness was found, or the check was consistent.
   */
  PS_STATUS_OK = 0,
  /**
   * Certified empty, no periodic point, or refuted.
   */
  PS_STATUS_NEGATIVE = 1,
  /**
   * The node budget ran out.
   */
  PS_STATUS_INCONCLUSIVE = 2,
  PS_STATUS_NULL_POINTER = 3,
  PS_STATUS_INVALID_UTF8 = 4,
  /**
   * Input text did not parse or described an invalid object.
   */
  PS_STATUS_MALFORMED = 5,
  /**
   * The arguments were well formed but the operation rejected them.
   */
  PS_STATUS_INVALID_ARGUMENT = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  PS_STATUS_PANIC = 7,
} PsStatus;

/**
 * Opaque configuration handle.
 */
typedef struct PsConfig PsConfig;

/**
 * Opaque SFT handle.
 */
typedef struct PsSft PsSft;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *ps_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void ps_string_free(char *s);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum PsStatus ps_sft_from_json(const char *json, struct PsSft **out);

/**
 * Canonical JSON of an SFT.
 *
 * # Safety
 * `sft` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_sft_to_json(const struct PsSft *sft, char **out);

/**
 * # Safety
 * `sft` must come from this library and not have been freed. NULL is ignored.
 */
void ps_sft_free(struct PsSft *sft);

/**
 * Alphabet size and number of forbidden patterns.
 *
 * # Safety
 * `sft` must be a live handle; the out-pointers must be writable.
 */
enum PsStatus ps_sft_shape(const struct PsSft *sft, size_t *symbols, size_t *patterns);

/**
 * # Safety
 * `out` must be writable.
 */
enum PsStatus ps_mod3_marker(size_t dim, struct PsSft **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum PsStatus ps_sft_product(const struct PsSft *a, const struct PsSft *b, struct PsSft **out);

/**
 * Quotient lift along a homomorphism given as JSON.
 *
 * # Safety
 * `sft` must be a live handle, `hom_json` NUL-terminated, `out` writable.
 */
enum PsStatus ps_sft_lift(const struct PsSft *sft, const char *hom_json, struct PsSft **out);

/**
 * Subgroup induction along an embedding given as JSON.
 *
 * # Safety
 * `sft` must be a live handle, `hom_json` NUL-terminated, `out` writable.
 */
enum PsStatus ps_sft_induce(const struct PsSft *sft, const char *hom_json, struct PsSft **out);

/**
 * Bounded emptiness check on `ball(G, radius)`. Returns `Ok` with a witness in
 * `witness`, `Negative` when the ball has no admissible coloring, or
 * `Inconclusive`; `witness` is NULL unless the status is `Ok`.
 *
 * # Safety
 * `sft` must be a live handle; `witness` must be writable.
 */
enum PsStatus ps_check_ball(const struct PsSft *sft,
                            uint32_t radius,
                            uint64_t budget,
                            struct PsConfig **witness);

/**
 * Looks for a point with periods `lattice` (rows `"a,b;c,d"`). `Negative` when none exists.
 *
 * # Safety
 * `sft` must be a live handle, `lattice` NUL-terminated, `witness` writable.
 */
enum PsStatus ps_find_periodic(const struct PsSft *sft,
                               const char *lattice,
                               struct PsConfig **witness);

/**
 * Number of admissible colorings of the torus `Z^n / lattice`.
 *
 * # Safety
 * `sft` must be a live handle, `lattice` NUL-terminated, `count` writable.
 */
enum PsStatus ps_count_torus(const struct PsSft *sft, const char *lattice, uint64_t *count);

/**
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum PsStatus ps_config_from_json(const char *json, struct PsConfig **out);

/**
 * # Safety
 * `config` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_config_to_json(const struct PsConfig *config, char **out);

/**
 * # Safety
 * `config` must come from this library and not have been freed. NULL is ignored.
 */
void ps_config_free(struct PsConfig *config);

/**
 * Stabilizer of a torus configuration as rows `"a,b;c,d"`.
 *
 * # Safety
 * `config` must be a live handle; `out` must be writable.
 */
enum PsStatus ps_stabilizer(const struct PsConfig *config, char **out);

/**
 * `Ok` when the automorphism (rows `"a,b;c,d"`) gives no obstruction on the
 * configuration's window, `Negative` when it is refuted.
 *
 * # Safety
 * `sft` and `config` must be live handles; `matrix` must be NUL-terminated.
 */
enum PsStatus ps_div_witness_check(const struct PsSft *sft,
                                   const struct PsConfig *config,
                                   const char *matrix);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYSFT_H */
