#ifndef BALLOUT_H
#define BALLOUT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BalloutStatus {
  BALLOUT_STATUS_OK = 0,
  BALLOUT_STATUS_NULL_POINTER = 1,
  BALLOUT_STATUS_INVALID_PARAMS = 2,
  BALLOUT_STATUS_DEGENERATE = 3,
  BALLOUT_STATUS_INVALID_DATASET = 4,
  BALLOUT_STATUS_OUT_OF_RANGE = 5,
  BALLOUT_STATUS_SPEC_INFEASIBLE = 6,
  BALLOUT_STATUS_INVALID_ARGS = 7,
  BALLOUT_STATUS_IO = 8,
  BALLOUT_STATUS_PANIC = 9,
} BalloutStatus;

// Opaque point set.
typedef struct BalloutDataset BalloutDataset;

// Opaque list of per-class results.
typedef struct BalloutMultiResult BalloutMultiResult;

// Opaque fitted ball with its inliers.
typedef struct BalloutResult BalloutResult;

// Algorithm knobs. `meb_iters == 0` selects `ceil(1 / epsilon^2)`.
typedef struct BalloutParams {
  double gamma;
  double epsilon;
  double delta;
  double mu;
  size_t meb_iters;
  size_t forest_size;
  size_t sequential_rounds;
  uint64_t seed;
} BalloutParams;

typedef struct BalloutF1 {
  double precision;
  double recall;
  double f1;
  // Nonzero when the prediction was empty.
  uint8_t empty_prediction;
} BalloutF1;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct BalloutParams ballout_params_default(void);

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call into this library on the same thread.
const char *ballout_last_error(void);

const char *ballout_status_str(enum BalloutStatus status);

// Copies `n * d` row-major values into a new dataset.
//
// # Safety
// `data` must point to `n * d` readable doubles; `out` must be writable.
enum BalloutStatus ballout_dataset_new(const double *data,
                                       size_t n,
                                       size_t d,
                                       struct BalloutDataset **out);

// Reads a headerless CSV file, one point per row.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum BalloutStatus ballout_dataset_read_csv(const char *path, struct BalloutDataset **out);

// # Safety
// `ds` must be null or a live dataset handle.
size_t ballout_dataset_n(const struct BalloutDataset *ds);

// # Safety
// `ds` must be null or a live dataset handle.
size_t ballout_dataset_d(const struct BalloutDataset *ds);

// # Safety
// `ds` must be null or a handle not yet freed.
void ballout_dataset_free(struct BalloutDataset *ds);

// Fits one ball covering `n - k` points.
//
// # Safety
// `ds` and `params` must be valid; `out` must be writable.
enum BalloutStatus ballout_recognize(const struct BalloutDataset *ds,
                                     const struct BalloutParams *params,
                                     struct BalloutResult **out);

// Peels `classes` inlier classes with the given fractions.
//
// # Safety
// `fractions` must point to `classes` doubles; other pointers as for
// [`ballout_recognize`].
enum BalloutStatus ballout_peel(const struct BalloutDataset *ds,
                                const struct BalloutParams *params,
                                const double *fractions,
                                size_t classes,
                                struct BalloutMultiResult **out);

// # Safety
// `r` must be null or a live result handle.
size_t ballout_result_dim(const struct BalloutResult *r);

// Center coordinates, `ballout_result_dim` values owned by the result.
//
// # Safety
// `r` must be null or a live result handle.
const double *ballout_result_center(const struct BalloutResult *r);

// # Safety
// `r` must be null or a live result handle.
double ballout_result_radius(const struct BalloutResult *r);

// # Safety
// `r` must be null or a live result handle.
double ballout_result_score(const struct BalloutResult *r);

// # Safety
// `r` must be null or a live result handle.
size_t ballout_result_candidates(const struct BalloutResult *r);

// # Safety
// `r` must be null or a live result handle.
size_t ballout_result_inlier_count(const struct BalloutResult *r);

// Sorted 0-based inlier row indices, owned by the result.
//
// # Safety
// `r` must be null or a live result handle.
const size_t *ballout_result_inliers(const struct BalloutResult *r);

// # Safety
// `r` must be null or a handle from [`ballout_recognize`] not yet freed.
void ballout_result_free(struct BalloutResult *r);

// # Safety
// `m` must be null or a live multi-result handle.
size_t ballout_multi_count(const struct BalloutMultiResult *m);

// Class `j`, borrowed from `m`; null if out of range. Do not free it.
//
// # Safety
// `m` must be null or a live multi-result handle.
const struct BalloutResult *ballout_multi_class(const struct BalloutMultiResult *m, size_t j);

// # Safety
// `m` must be null or a handle from [`ballout_peel`] not yet freed.
void ballout_multi_free(struct BalloutMultiResult *m);

// Precision, recall and F1 of `predicted` against `truth`, both subsets
// of `0..n`.
//
// # Safety
// Each array must hold its stated length; `out` must be writable.
enum BalloutStatus ballout_f1(const size_t *predicted,
                              size_t predicted_len,
                              const size_t *truth,
                              size_t truth_len,
                              size_t n,
                              struct BalloutF1 *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BALLOUT_H */
