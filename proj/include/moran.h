/* moran: Moran's I spatial autocorrelation, its exact attainable range as a
 * function of the spatial weights matrix, a rescaled alternative with exact
 * range [-1, 1], and a permutation test of spatial independence.
 *
 * Every function returns MORAN_OK on success or a status code on failure;
 * moran_last_error() describes the most recent failure on the calling
 * thread. Weights matrices are opaque handles owned by the caller and
 * released with moran_weights_free().
 */
#ifndef MORAN_H
#define MORAN_H

#include <stdint.h>

#if defined(_WIN32)
#define MORAN_API __declspec(dllexport)
#else
#define MORAN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum moran_status {
  MORAN_OK = 0,
  MORAN_ERR_NON_SQUARE = 1,
  MORAN_ERR_NEGATIVE_WEIGHT = 2,
  MORAN_ERR_NONZERO_DIAGONAL = 3,
  MORAN_ERR_ALL_ZERO_WEIGHTS = 4,
  MORAN_ERR_TOO_SMALL = 5,
  MORAN_ERR_Q_OUT_OF_RANGE = 6,
  MORAN_ERR_A_OUT_OF_RANGE = 7,
  MORAN_ERR_PARSE = 8,
  MORAN_ERR_IO = 9,
  MORAN_ERR_DIMENSION_MISMATCH = 10,
  MORAN_ERR_NO_CONVERGENCE = 11,
  MORAN_ERR_CONSTANT_OBSERVATIONS = 12,
  MORAN_ERR_ZERO_SCALE = 13,
  MORAN_ERR_DEGENERATE_BOUNDS = 14,
  MORAN_ERR_TOO_FEW_REPLICATES = 15,
  MORAN_ERR_TOO_LARGE_FOR_EXHAUSTIVE = 16,
  MORAN_ERR_NO_CROSSING = 17,
  MORAN_ERR_INVALID_ARGUMENT = 18,
  MORAN_ERR_INTERNAL = 19
} moran_status;

/* Message for the most recent failing call on this thread; empty string if
 * no call has failed yet. The pointer stays valid until the next failing
 * call on the same thread. */
MORAN_API const char* moran_last_error(void);
MORAN_API const char* moran_status_name(moran_status status);
MORAN_API const char* moran_version(void);

/* ---- spatial weights ---------------------------------------------------- */

typedef struct moran_weights moran_weights;

/* raw is n*n row-major; validated (square, zero diagonal, nonnegative,
 * n >= 3) and stored symmetrized as (raw + raw^T)/2. */
MORAN_API moran_status moran_weights_from_dense(const double* raw, int32_t n,
                                                moran_weights** out);
/* Units on a line: w_ij = 2^(1-|i-j|) for 1 <= |i-j| <= q, else 0. */
MORAN_API moran_status moran_weights_line_decay(int32_t n, int32_t q,
                                                moran_weights** out);
/* Complete graph: w_ij = 1 for all i != j. */
MORAN_API moran_status moran_weights_complete(int32_t n, moran_weights** out);
/* n(n-1) uniforms on (1-a, 1+a) assigned to off-diagonal cells in row-major
 * order, then symmetrized. Deterministic in seed. */
MORAN_API moran_status moran_weights_random_uniform(int32_t n, double a,
                                                    uint64_t seed,
                                                    moran_weights** out);
/* Dense numeric CSV, one row per line; has_header skips the first row. */
MORAN_API moran_status moran_weights_read_csv(const char* path,
                                              int32_t has_header,
                                              moran_weights** out);
/* Writes CSV with 17 significant digits (read_csv round-trips bit-exactly). */
MORAN_API moran_status moran_weights_write_csv(const moran_weights* w,
                                               const char* path);
MORAN_API void moran_weights_free(moran_weights* w);

MORAN_API int32_t moran_weights_order(const moran_weights* w); /* n */
MORAN_API double moran_weights_sum(const moran_weights* w);
/* Copies the symmetrized matrix into out (n*n row-major). */
MORAN_API moran_status moran_weights_copy_dense(const moran_weights* w,
                                                double* out);

/* ---- statistic, bounds, rescaled alternative ---------------------------- */

typedef struct moran_result {
  double i;          /* Moran's I */
  double i_m;        /* rescaled alternative, exact range [-1, 1] */
  double lambda_min; /* exact attainable lower bound of I */
  double lambda_max; /* exact attainable upper bound of I */
  int32_t n;
} moran_result;

/* Moran's I of y (length n == weights order) from the defining formula. */
MORAN_API moran_status moran_statistic(const moran_weights* w, const double* y,
                                       int32_t n, double* i_out);
/* Extreme eigenvalues of the reduced matrix: the exact range of I. */
MORAN_API moran_status moran_bounds(const moran_weights* w, double* lambda_min,
                                    double* lambda_max);
/* Statistic, range and rescaled value from a single eigendecomposition. */
MORAN_API moran_status moran_analyze(const moran_weights* w, const double* y,
                                     int32_t n, moran_result* out);

typedef enum moran_extremum { MORAN_LOWER = 0, MORAN_UPPER = 1 } moran_extremum;

/* Observation vector attaining the requested bound; y_out has length n.
 * Any shift and any nonzero scale give the same statistic. */
MORAN_API moran_status moran_extremal_observations(const moran_weights* w,
                                                   moran_extremum which,
                                                   double shift, double scale,
                                                   double* y_out);

/* Monotone rescaling of a statistic value onto [-1, 1] for this weights
 * matrix; i is clamped into [lambda_min, lambda_max] first. */
MORAN_API moran_status moran_alternative(const moran_weights* w, double i,
                                         double* i_m_out);

typedef enum moran_definiteness {
  MORAN_NEGATIVE_DEFINITE = 0,          /* I < 0 for every y */
  MORAN_INDEFINITE = 1,                 /* I takes both signs */
  MORAN_NEGATIVE_SEMIDEFINITE_BOUNDARY = 2
} moran_definiteness;

MORAN_API moran_status moran_classify_definiteness(const moran_weights* w,
                                                   moran_definiteness* out);

/* ---- permutation test ---------------------------------------------------- */

typedef enum moran_tail {
  MORAN_TAIL_GREATER = 0,
  MORAN_TAIL_LESS = 1,
  MORAN_TAIL_TWO_SIDED = 2
} moran_tail;

typedef struct moran_permtest_result {
  double observed_i;
  double observed_i_m;
  double p_value;   /* add-one rule; in (0, 1] */
  double null_mean; /* mean statistic over the replicates */
  int32_t replicates;
  int32_t tail;
  uint64_t seed;
} moran_permtest_result;

/* Permutation test of spatial independence; replicates >= 99. Identical
 * (y, w, replicates, seed, tail) give identical results. */
MORAN_API moran_status moran_permutation_test(const moran_weights* w,
                                              const double* y, int32_t n,
                                              int32_t replicates,
                                              uint64_t seed, moran_tail tail,
                                              moran_permtest_result* out);

/* Exact permutation-null mean of I over all n! relabelings (n <= 8). */
MORAN_API moran_status moran_exact_null_moments(const moran_weights* w,
                                                const double* y, int32_t n,
                                                double* mean_out,
                                                uint64_t* count_out);

/* ---- experiment drivers -------------------------------------------------- */

/* Bounds of I for line-decay weights over an (n, q) grid. lower_out and
 * upper_out hold ns_len*qs_len entries, n-major. */
MORAN_API moran_status moran_table1(const int32_t* ns, int32_t ns_len,
                                    const int32_t* qs, int32_t qs_len,
                                    double* lower_out, double* upper_out);

/* Number of grid points {step, 2*step, ..., 1-step}; <= 0 on a bad step. */
MORAN_API int32_t moran_threshold_grid_size(double grid_step);

/* Monte-Carlo estimate of the half-width a* where random uniform weights on
 * (1-a, 1+a) stop being negative definite. a_grid_out and fraction_out may
 * be NULL or hold moran_threshold_grid_size(grid_step) entries. */
MORAN_API moran_status moran_definiteness_threshold(
    int32_t n, int32_t trials_per_a, double grid_step, uint64_t seed,
    double* a_star_out, double* a_grid_out, double* fraction_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MORAN_H */
