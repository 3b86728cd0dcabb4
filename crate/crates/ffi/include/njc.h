#ifndef NJC_H
#define NJC_H

#pragma once

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NjcStatus {
  NJC_STATUS_OK = 0,
  NJC_STATUS_NULL_POINTER = 1,
  NJC_STATUS_INVALID_PARAMETER = 2,
  // Critical detuning requested with `k = 0`.
  NJC_STATUS_ZERO_DEFORMATION = 3,
  // The requested cutoff leaves too much probability in the tail.
  NJC_STATUS_TRUNCATION = 4,
  NJC_STATUS_NUMERICAL = 5,
  // A single-mode state was passed where a paired one is needed, or vice versa.
  NJC_STATUS_WRONG_MODEL = 6,
  NJC_STATUS_BUFFER_TOO_SMALL = 7,
  NJC_STATUS_PANIC = 8,
  NJC_STATUS_OTHER = 9,
} NjcStatus;

// Opaque field state: single-mode Fock amplitudes or paired amplitudes.
typedef struct NjcState NjcState;

// Single-mode parameters. `omega` is the field frequency.
typedef struct NjcSingleParams {
  double omega;
  double lambda;
  double k;
  double delta;
} NjcSingleParams;

typedef struct NjcTwoParams {
  double omega1;
  double omega2;
  double lambda;
  double k;
  double delta;
} NjcTwoParams;

typedef struct NjcSingleRecord {
  double time;
  double inversion;
  double linear_entropy;
  double coherence;
} NjcSingleRecord;

typedef struct NjcTwoRecord {
  double time;
  double inversion;
  double tangle_a_ff;
  double tangle_af1_f2;
  double tangle_af2_f1;
  double relative_entropy;
  double coherence;
} NjcTwoRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len - 1` bytes). Returns the full message length in bytes,
// or 0 if there is none.
//
// # Safety
// `buf` must be null or valid for `len` bytes of writes.
size_t njc_last_error_message(char *buf, size_t len);

// Critical detuning of the single-mode model at mean photon number `n_bar`.
// `params->delta` is ignored.
//
// # Safety
// `params` and `out` must be null or valid.
enum NjcStatus njc_critical_detuning_single(double n_bar,
                                            const struct NjcSingleParams *params,
                                            double *out);

// Critical detuning of the two-mode model at total mean photon number
// `n_total`. `params->delta` is ignored.
//
// # Safety
// `params` and `out` must be null or valid.
enum NjcStatus njc_critical_detuning_two(double n_total,
                                         const struct NjcTwoParams *params,
                                         double *out);

// Coherent state `|α⟩`, `α = re + i·im`, cut at `n_max` (0 picks the cutoff
// automatically).
//
// # Safety
// `out` must be null or valid for writes.
enum NjcStatus njc_state_coherent(double re, double im, size_t n_max, struct NjcState **out);

// Squeezed vacuum with squeeze parameter `r` and phase `theta`.
//
// # Safety
// `out` must be null or valid for writes.
enum NjcStatus njc_state_squeezed_vacuum(double r,
                                         double theta,
                                         size_t n_max,
                                         struct NjcState **out);

// Pair coherent state with `ζ = re + i·im`; `n_max` bounds the pair index.
//
// # Safety
// `out` must be null or valid for writes.
enum NjcStatus njc_state_pair_coherent(double re, double im, size_t n_max, struct NjcState **out);

// Two-mode squeezed vacuum with squeeze parameter `r`.
//
// # Safety
// `out` must be null or valid for writes.
enum NjcStatus njc_state_two_mode_squeezed(double r, size_t n_max, struct NjcState **out);

// Releases a state. Null is accepted.
//
// # Safety
// `state` must be null or a handle from this library not yet freed.
void njc_state_free(struct NjcState *state);

// Cutoff of the state (largest photon or pair number kept).
//
// # Safety
// Pointers must be null or valid.
enum NjcStatus njc_state_n_max(const struct NjcState *state, size_t *out);

// Mean photon number (summed over both modes for paired states).
//
// # Safety
// Pointers must be null or valid.
enum NjcStatus njc_state_mean_photon_number(const struct NjcState *state, double *out);

// Observables at time `t` for the atom starting excited.
//
// # Safety
// Pointers must be null or valid.
enum NjcStatus njc_single_record(const struct NjcState *state,
                                 const struct NjcSingleParams *params,
                                 double t,
                                 struct NjcSingleRecord *out);

// Tangles, relative entropy and inversion at time `t`.
//
// # Safety
// Pointers must be null or valid.
enum NjcStatus njc_two_record(const struct NjcState *state,
                              const struct NjcTwoParams *params,
                              double t,
                              struct NjcTwoRecord *out);

// Samples at `t = j·dt`, `j = 0..=t_max/dt`. `*written` receives the number
// of samples even when the buffer is too small.
//
// # Safety
// Pointers must be null or valid; `buf` must hold `capacity` records.
enum NjcStatus njc_single_timeseries(const struct NjcState *state,
                                     const struct NjcSingleParams *params,
                                     double t_max,
                                     double dt,
                                     struct NjcSingleRecord *buf,
                                     size_t capacity,
                                     size_t *written);

// Two-mode counterpart of [`njc_single_timeseries`].
//
// # Safety
// Pointers must be null or valid; `buf` must hold `capacity` records.
enum NjcStatus njc_two_timeseries(const struct NjcState *state,
                                  const struct NjcTwoParams *params,
                                  double t_max,
                                  double dt,
                                  struct NjcTwoRecord *buf,
                                  size_t capacity,
                                  size_t *written);

// Time average of the linear entropy over `[0, t_max]` (trapezoid rule, step `dt`).
//
// # Safety
// Pointers must be null or valid.
enum NjcStatus njc_mean_linear_entropy(const struct NjcState *state,
                                       const struct NjcSingleParams *params,
                                       double t_max,
                                       double dt,
                                       double *out);

// Time averages of every two-mode measure; `out->time` is set to `t_max`.
//
// # Safety
// Pointers must be null or valid.
enum NjcStatus njc_mean_measures(const struct NjcState *state,
                                 const struct NjcTwoParams *params,
                                 double t_max,
                                 double dt,
                                 struct NjcTwoRecord *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NJC_H */
