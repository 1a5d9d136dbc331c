#ifndef REGDEPTH_H
#define REGDEPTH_H

/* C interface to the regression depth library. Every call returns a
 * regdepth_status; on failure regdepth_last_error() describes the cause for
 * the calling thread. Strings returned through char** are owned by the
 * caller and released with regdepth_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(REGDEPTH_BUILDING)
#    define REGDEPTH_API __declspec(dllexport)
#  else
#    define REGDEPTH_API __declspec(dllimport)
#  endif
#else
#  define REGDEPTH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum regdepth_status {
  REGDEPTH_OK = 0,
  REGDEPTH_E_INVALID_ARGUMENT = 1,
  REGDEPTH_E_DIMENSION_MISMATCH = 2,
  REGDEPTH_E_ZERO_SCALE = 3,
  REGDEPTH_E_DEGENERATE_DIRECTION = 4,
  REGDEPTH_E_ALL_DIRECTIONS_DEGENERATE = 5,
  REGDEPTH_E_WRONG_SHAPE = 6,
  REGDEPTH_E_RANK_DEFICIENT = 7,
  REGDEPTH_E_UNSUPPORTED_DIMENSION = 8,
  REGDEPTH_E_IO = 9,
  REGDEPTH_E_PARSE = 10,
  REGDEPTH_E_USAGE = 11,
  REGDEPTH_E_INTERNAL = 12
} regdepth_status;

typedef struct regdepth_dataset regdepth_dataset;

/* Depth and fit configuration. Strings may be NULL for the defaults noted. */
typedef struct regdepth_options {
  uint64_t seed;             /* 1 */
  double tol;                /* zero-residual gate; negative: 1e-12 */
  size_t n_directions;       /* random directions, 512 */
  int data_directions;       /* add normals of data subsets, 1 */
  size_t n_competitors;      /* competitors for sampled depths, 10000 */
  size_t candidate_cap;      /* elemental candidates, 2000 */
  const char* family;        /* obj | dc | rd | prd, "rd" */
  const char* method;        /* rd: exact | sampled | baihe | competitor; dc: exact | sampled */
  const char* loss;          /* square | abs | check | huber, "square" */
  double loss_param;         /* tau for check, k for huber; negative: 0.5 / 1.345 */
  const char* agg;           /* mean | quantile, "mean" */
  double agg_tau;            /* 0.5 */
  const char* t;             /* median | quantile | mean, "median" */
  double t_tau;              /* 0.5 */
  int residual_scale;        /* scale residuals by MAD of r instead of MAD of y, 0 */
  int timing;                /* add elapsed_ms to outputs, 0 */
} regdepth_options;

REGDEPTH_API void regdepth_options_init(regdepth_options* opts);

REGDEPTH_API const char* regdepth_version(void);
REGDEPTH_API const char* regdepth_last_error(void);
REGDEPTH_API const char* regdepth_status_name(int status);
REGDEPTH_API void regdepth_string_free(char* s);

/* Caps worker threads for the parallel loops; 0 restores the default. */
REGDEPTH_API void regdepth_set_threads(unsigned n);

/* Reads a CSV with a header row. `response` names the y column; the other
 * columns form X, preceded by a column of ones when intercept != 0. */
REGDEPTH_API int regdepth_dataset_from_csv(const char* path, const char* response, int intercept,
                                           regdepth_dataset** out);
/* Row-major X (n x p). With intercept != 0 the first column must be all ones. */
REGDEPTH_API int regdepth_dataset_from_arrays(const double* X, const double* y, size_t n, size_t p,
                                              int intercept, regdepth_dataset** out);
REGDEPTH_API void regdepth_dataset_free(regdepth_dataset* ds);
REGDEPTH_API int regdepth_dataset_shape(const regdepth_dataset* ds, size_t* n, size_t* p);

/* The JSON producers below return one document embedding tool_version,
 * seed, config_hash and config alongside the result. */

REGDEPTH_API int regdepth_depth(const regdepth_dataset* ds, const double* beta, size_t p,
                                const regdepth_options* opts, char** json_out);

/* method: ls | lad | quantile | lms | deepest-rd | prd */
REGDEPTH_API int regdepth_fit(const regdepth_dataset* ds, const char* method, const regdepth_options* opts,
                              char** json_out);

/* CSV grid beta1,beta2,depth for p = 2. bounds = {lo1, hi1, lo2, hi2} or
 * NULL for 3x the range of the elemental fits. */
REGDEPTH_API int regdepth_contour(const regdepth_dataset* ds, const double* bounds, size_t steps1, size_t steps2,
                                  const regdepth_options* opts, char** csv_out);

/* suite: p1 | p2 | p3 | p4 | qc | all. *passed is 1 iff every check held,
 * counting expected failures as held when they are observed. */
REGDEPTH_API int regdepth_axioms(const regdepth_dataset* ds, const char* suite, size_t trials,
                                 const regdepth_options* opts, char** json_out, int* passed);

/* Halfspace depth of x among the rows of a points CSV, with the sampled
 * normalized depth alongside for comparison. */
REGDEPTH_API int regdepth_location_hd(const char* points_csv, const double* x, size_t dim,
                                      const regdepth_options* opts, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
