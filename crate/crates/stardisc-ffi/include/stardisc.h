/* C interface to the stardisc library. Generated by cbindgen; do not edit. */

#ifndef STARDISC_H
#define STARDISC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define STARDISC_OK 0

// Unexpected failure; inspect `stardisc_last_error`.
#define STARDISC_ERR_INTERNAL 1

// A parameter is outside its documented domain, or an input failed to parse.
#define STARDISC_ERR_INVALID 2

// The computation exceeds the work budget, or the sample size is below the
// regime threshold.
#define STARDISC_ERR_CAPACITY 3

// A required pointer argument is null.
#define STARDISC_ERR_NULL 4

// Opaque owner of an s-dimensional point set in the unit cube.
typedef struct StardiscPointSet StardiscPointSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *stardisc_version(void);

// Message for the most recent failure on the calling thread. The pointer
// stays valid until the next failing call on the same thread.
const char *stardisc_last_error(void);

// Coefficient of the probabilistic discrepancy bound:
// 5.7 sqrt(4.9 + ln(1/(1-q))/s).
//
// # Safety
// `out` must point to writable memory for one double.
int32_t stardisc_theorem_coefficient(double q, size_t s, double *out);

// The bound itself: coefficient * sqrt(s/N).
//
// # Safety
// `out` must point to writable memory for one double.
int32_t stardisc_theorem_bound(double q, size_t s, uint64_t n, double *out);

// Dimension-uniform variant: 5.7 sqrt(4.9 + ln(1/(1-q))) * sqrt(s/N).
//
// # Safety
// `out` must point to writable memory for one double.
int32_t stardisc_corollary_bound(double q, size_t s, uint64_t n, double *out);

// Smallest N whose bound is at most eps.
//
// # Safety
// `out` must point to writable memory for one uint64_t.
int32_t stardisc_inverse_theorem(double q, size_t s, double eps, uint64_t *out);

// Sample size certifying that a set with discrepancy <= eps exists:
// ceil(100 s / eps^2).
//
// # Safety
// `out` must point to writable memory for one uint64_t.
int32_t stardisc_inverse_existence(size_t s, double eps, uint64_t *out);

// Smallest admissible N for (q, s); below it the bound exceeds 1.
//
// # Safety
// `out` must point to writable memory for one double.
int32_t stardisc_trivial_regime_threshold(double q, size_t s, double *out);

// Hoeffding tail 2 exp(-2 t^2 / N) for a sum of N centered indicators.
//
// # Safety
// `out` must point to writable memory for one double.
int32_t stardisc_hoeffding_tail(uint64_t n, double t, double *out);

// Bernstein tail at dyadic level k >= 2:
// 2 exp(-t^2 / (2 N 2^-k (1 - 2^-k) + 2t/3)).
//
// # Safety
// `out` must point to writable memory for one double.
int32_t stardisc_bernstein_tail_k(uint64_t n, uint32_t k, double t, double *out);

// Runs the full constant-chain audit for (q, s, N). STARDISC_OK with
// `*out_overall = false` means the audit ran and found a violated check;
// STARDISC_ERR_CAPACITY means N is below the admissible regime.
//
// # Safety
// `out_overall` must point to writable memory for one bool.
int32_t stardisc_audit(double q, size_t s, uint64_t n, bool *out_overall);

// Builds a point set from `n` rows of `dim` coordinates, row-major, all in
// [0,1]. Returns null and sets the thread error message on failure.
//
// # Safety
// `coords` must be valid for reads of `n * dim` doubles (it is unused when
// `n * dim == 0`). Free the result with `stardisc_pointset_free`.
struct StardiscPointSet *stardisc_pointset_new(size_t dim, size_t n, const double *coords);

// Reads a point set from a text file: header line "s N", then N rows of s
// coordinates. Returns null and sets the thread error message on failure.
//
// # Safety
// `path` must be a NUL-terminated string. Free the result with
// `stardisc_pointset_free`.
struct StardiscPointSet *stardisc_pointset_read(const char *path);

// Draws n independent uniform points in [0,1]^s from the seeded generator;
// equal (seed, stream) pairs reproduce the same set on every platform.
//
// # Safety
// Free the result with `stardisc_pointset_free`.
struct StardiscPointSet *stardisc_pointset_generate(size_t s,
                                                    size_t n,
                                                    uint64_t seed,
                                                    uint64_t stream);

// Number of points.
//
// # Safety
// `ps` must be a live handle from this library; `out` must be writable.
int32_t stardisc_pointset_len(const struct StardiscPointSet *ps, size_t *out);

// Dimension of the ambient cube.
//
// # Safety
// `ps` must be a live handle from this library; `out` must be writable.
int32_t stardisc_pointset_dim(const struct StardiscPointSet *ps, size_t *out);

// Releases a handle. Null is a no-op.
//
// # Safety
// `ps` must be null or a handle from this library, freed at most once.
void stardisc_pointset_free(struct StardiscPointSet *ps);

// Exact star discrepancy. Work grows as (N+1)^s; requests whose estimated
// step count exceeds `budget` fail with STARDISC_ERR_CAPACITY.
//
// # Safety
// `ps` must be a live handle from this library; `out` must be writable.
int32_t stardisc_exact_discrepancy(const struct StardiscPointSet *ps, uint64_t budget, double *out);

// Lower end L of the cover bracket L <= D* <= L + delta, maximized over
// the equidistant delta-cover.
//
// # Safety
// `ps` must be a live handle from this library; `out` must be writable.
int32_t stardisc_cover_discrepancy(const struct StardiscPointSet *ps,
                                   double delta,
                                   uint64_t budget,
                                   double *out);

// Fraction of the set inside the anchored closed box [0, upper], minus the
// box volume. `upper` holds the box corner as `dim` doubles.
//
// # Safety
// `ps` must be a live handle from this library; `upper` must be valid for
// reads of the set's dimension; `out` must be writable.
int32_t stardisc_local_discrepancy(const struct StardiscPointSet *ps,
                                   const double *upper,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARDISC_H */
