#ifndef KOSZUL_LAB_H
#define KOSZUL_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KlStatus {
  KL_STATUS_OK = 0,
  KL_STATUS_PARSE_ERROR = 1,
  KL_STATUS_CONFIG_ERROR = 2,
  KL_STATUS_UNSUPPORTED = 3,
  KL_STATUS_WINDOW_TOO_SMALL = 4,
  KL_STATUS_INTERNAL = 5,
  KL_STATUS_NULL_ARGUMENT = 6,
  KL_STATUS_INVALID_UTF8 = 7,
  KL_STATUS_PANIC = 8,
} KlStatus;

/**
 * Outcome of [`kl_koszul_check`].
 */
typedef enum KlKoszul {
  /**
   * linear through the requested number of steps
   */
  KL_KOSZUL_LINEAR = 0,
  /**
   * nonlinear entry found; see `fail_i`, `fail_j`
   */
  KL_KOSZUL_FAILS = 1,
  /**
   * degree window too small to decide
   */
  KL_KOSZUL_INCONCLUSIVE = 2,
} KlKoszul;

/**
 * Betti table over a finite window.
 */
typedef struct KlBetti KlBetti;

/**
 * Parsed ring `Q/I`.
 */
typedef struct KlRing KlRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *kl_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void kl_string_free(char *s);

/**
 * Parses a ring file. `p` overrides the prime in the text when nonzero.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KlStatus kl_ring_parse(const char *text, uint64_t p, struct KlRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from [`kl_ring_parse`], freed once.
 */
void kl_ring_free(struct KlRing *ring);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t kl_ring_nvars(const struct KlRing *ring);

/**
 * Number of minimal generators, or 0 for a null handle.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t kl_ring_ngens(const struct KlRing *ring);

/**
 * Betti table over `0..=i_max`, `0..=j_max`; negative bounds select the
 * default window.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum KlStatus kl_betti_compute(const struct KlRing *ring,
                               int32_t i_max,
                               int32_t j_max,
                               struct KlBetti **out);

/**
 * # Safety
 * `betti` must be null or a handle from [`kl_betti_compute`], freed once.
 */
void kl_betti_free(struct KlBetti *betti);

/**
 * `β_{i,j}`, or 0 outside the window or for a null handle.
 *
 * # Safety
 * `betti` must be null or a live handle.
 */
uint64_t kl_betti_get(const struct KlBetti *betti, size_t i, size_t j);

/**
 * Window bounds and whether the window covers every nonzero entry.
 *
 * # Safety
 * `betti` must be a live handle; the out pointers may be null.
 */
enum KlStatus kl_betti_window(const struct KlBetti *betti,
                              size_t *i_max,
                              size_t *j_max,
                              bool *complete);

/**
 * Table rendering with rows indexed by `j - i`; free with [`kl_string_free`].
 *
 * # Safety
 * `betti` must be a live handle and `out` a valid pointer.
 */
enum KlStatus kl_betti_render(const struct KlBetti *betti, char **out);

/**
 * Total deviation `ε_i` summed over internal degrees up to `j_max`.
 *
 * # Safety
 * `ring` must be a live handle and `out` a valid pointer.
 */
enum KlStatus kl_deviation(const struct KlRing *ring, size_t i, size_t j_max, uint64_t *out);

/**
 * Linearity of the resolution of k over R through `steps` steps.
 * `fail_i` and `fail_j` receive the first nonlinear `Tor_i(k,k)_j` when
 * the verdict is [`KlKoszul::Fails`]; they may be null.
 *
 * # Safety
 * `ring` must be a live handle and `verdict` a valid pointer.
 */
enum KlStatus kl_koszul_check(const struct KlRing *ring,
                              size_t steps,
                              enum KlKoszul *verdict,
                              size_t *fail_i,
                              size_t *fail_j);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOSZUL_LAB_H */
