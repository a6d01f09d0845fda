/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef STABILAB_H
#define STABILAB_H

#include <stddef.h>
#include <stdint.h>

typedef enum StabilabStatus {
  STABILAB_STATUS_OK = 0,
  STABILAB_STATUS_NULL_POINTER = 1,
  STABILAB_STATUS_INVALID_ARGUMENT = 2,
  STABILAB_STATUS_DIMENSION_MISMATCH = 3,
  STABILAB_STATUS_SINGULAR = 4,
  /*
   Parameters outside the region where a bound holds.
   */
  STABILAB_STATUS_DOMAIN = 5,
  STABILAB_STATUS_PRECONDITION = 6,
  STABILAB_STATUS_IO = 7,
  STABILAB_STATUS_PANIC = 8,
} StabilabStatus;

/*
 Opaque labelled sample.
 */
typedef struct StabilabDataset StabilabDataset;

/*
 Opaque fitted ridge model.
 */
typedef struct StabilabRidgeModel StabilabRidgeModel;

/*
 The three constants of the ridge moment bounds, with the inputs they were built from.
 */
typedef struct StabilabGammaSet {
  double gamma1;
  double gamma2;
  double gamma3;
  double b_x;
  double lambda;
  double eta;
  double kappa;
} StabilabGammaSet;

/*
 Message for the most recent failure on the calling thread, or NULL if none.
 The string stays valid until the next failing call on the same thread.
 */
const char *stabilab_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *stabilab_version(void);

/*
 Builds a dataset from `n` row-major feature rows of width `d` and `n` labels.

 # Safety
 `x` points to `n * d` doubles, `y` to `n` doubles, `out` is writable.
 */
enum StabilabStatus stabilab_dataset_new(const double *x,
                                         const double *y,
                                         size_t n,
                                         size_t d,
                                         struct StabilabDataset **out);

/*
 Draws `n` points from the distribution described by `spec_json` (the JSON
 form of a data spec) on stream `(base_seed, stream_index)`.

 # Safety
 `spec_json` is a NUL-terminated string and `out` is writable.
 */
enum StabilabStatus stabilab_dataset_sample(const char *spec_json,
                                            size_t n,
                                            uint64_t base_seed,
                                            uint64_t stream_index,
                                            struct StabilabDataset **out);

/*
 # Safety
 `data` is NULL or an unfreed dataset handle.
 */
void stabilab_dataset_free(struct StabilabDataset *data);

/*
 # Safety
 `data` is a dataset handle; `n` and `d` are writable.
 */
enum StabilabStatus stabilab_dataset_shape(const struct StabilabDataset *data,
                                           size_t *n,
                                           size_t *d);

/*
 # Safety
 `data` is a dataset handle and `out` is writable.
 */
enum StabilabStatus stabilab_ridge_fit(const struct StabilabDataset *data,
                                       double lambda,
                                       struct StabilabRidgeModel **out);

/*
 # Safety
 `model` is NULL or an unfreed model handle.
 */
void stabilab_ridge_free(struct StabilabRidgeModel *model);

/*
 Copies the coefficients into `beta`, which holds `len` doubles; `len` must
 equal the feature dimension.

 # Safety
 `model` is a model handle and `beta` has room for `len` doubles.
 */
enum StabilabStatus stabilab_ridge_coefficients(const struct StabilabRidgeModel *model,
                                                double *beta,
                                                size_t len);

/*
 # Safety
 `model` is a model handle, `x` holds `d` doubles, `out` is writable.
 */
enum StabilabStatus stabilab_ridge_predict(const struct StabilabRidgeModel *model,
                                           const double *x,
                                           size_t d,
                                           double *out);

/*
 Leave-one-out squared-error risk of ridge regression via rank-one downdates.

 # Safety
 `data` is a dataset handle and `out` is writable.
 */
enum StabilabStatus stabilab_ridge_loo(const struct StabilabDataset *data,
                                       double lambda,
                                       double *out);

/*
 Leave-one-out zero-one risk of the k-nearest-neighbours classifier.

 # Safety
 `data` is a dataset handle with 0/1 labels and `out` is writable.
 */
enum StabilabStatus stabilab_knn_loo(const struct StabilabDataset *data, size_t k, double *out);

/*
 # Safety
 `out` is writable.
 */
enum StabilabStatus stabilab_gamma_set(double b_x,
                                       double lambda,
                                       double eta,
                                       struct StabilabGammaSet *out);

/*
 Returns `STABILAB_STATUS_OK` when `(b_x, lambda, eta, n)` lies in the
 region where the moment and PAC bounds hold, `STABILAB_STATUS_DOMAIN` otherwise.
 */
enum StabilabStatus stabilab_check_bound_domain(double b_x, double lambda, double eta, size_t n);

/*
 PAC deviation bound for bounded labels, holding with probability `1 − e·e^{−x}`.

 # Safety
 `gammas` is readable and `out` is writable.
 */
enum StabilabStatus stabilab_pac_bound_bounded(const struct StabilabGammaSet *gammas,
                                               double b_y,
                                               size_t n,
                                               double x,
                                               double *out);

/*
 PAC deviation bound for sub-Gaussian labels with mean `mean_y` and proxy `v`.

 # Safety
 `gammas` is readable and `out` is writable.
 */
enum StabilabStatus stabilab_pac_bound_subgaussian(const struct StabilabGammaSet *gammas,
                                                   double mean_y,
                                                   double v,
                                                   size_t n,
                                                   double x,
                                                   double *out);

/*
 Ridge L^q stability constant; `y_norm_2q` may be `INFINITY`.

 # Safety
 `out` is writable.
 */
enum StabilabStatus stabilab_ridge_gamma_q(double b_x,
                                           double lambda,
                                           double eta,
                                           size_t n,
                                           double y_norm_2q,
                                           double *out);

/*
 kNN first-order stability constant `(4/√(2π))·√k/n`.

 # Safety
 `out` is writable.
 */
enum StabilabStatus stabilab_knn_gamma_1(size_t k, size_t n, double *out);

#endif  /* STABILAB_H */
