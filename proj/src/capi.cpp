#include "moran.h"

#include <cmath>
#include <cstring>
#include <span>
#include <string>

#include "error.hpp"
#include "experiments.hpp"
#include "inference.hpp"
#include "statistic.hpp"
#include "weights.hpp"

struct moran_weights {
  moran::WeightsMatrix w;
};

namespace {

thread_local std::string t_last_error;

moran_status to_status(moran::errc c) {
  using moran::errc;
  switch (c) {
    case errc::non_square: return MORAN_ERR_NON_SQUARE;
    case errc::negative_weight: return MORAN_ERR_NEGATIVE_WEIGHT;
    case errc::nonzero_diagonal: return MORAN_ERR_NONZERO_DIAGONAL;
    case errc::all_zero_weights: return MORAN_ERR_ALL_ZERO_WEIGHTS;
    case errc::too_small: return MORAN_ERR_TOO_SMALL;
    case errc::q_out_of_range: return MORAN_ERR_Q_OUT_OF_RANGE;
    case errc::a_out_of_range: return MORAN_ERR_A_OUT_OF_RANGE;
    case errc::parse_error: return MORAN_ERR_PARSE;
    case errc::io_error: return MORAN_ERR_IO;
    case errc::dimension_mismatch: return MORAN_ERR_DIMENSION_MISMATCH;
    case errc::no_convergence: return MORAN_ERR_NO_CONVERGENCE;
    case errc::constant_observations: return MORAN_ERR_CONSTANT_OBSERVATIONS;
    case errc::zero_scale: return MORAN_ERR_ZERO_SCALE;
    case errc::degenerate_bounds: return MORAN_ERR_DEGENERATE_BOUNDS;
    case errc::too_few_replicates: return MORAN_ERR_TOO_FEW_REPLICATES;
    case errc::too_large_for_exhaustive:
      return MORAN_ERR_TOO_LARGE_FOR_EXHAUSTIVE;
    case errc::no_crossing: return MORAN_ERR_NO_CROSSING;
  }
  return MORAN_ERR_INTERNAL;
}

moran_status invalid_argument(const char* what) {
  t_last_error = what;
  return MORAN_ERR_INVALID_ARGUMENT;
}

template <typename F>
moran_status guarded(F&& body) {
  try {
    body();
    return MORAN_OK;
  } catch (const moran::error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return MORAN_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return MORAN_ERR_INTERNAL;
  }
}

template <typename F>
moran_status make_weights(moran_weights** out, F&& build) {
  if (!out) return invalid_argument("output handle pointer is null");
  *out = nullptr;
  return guarded([&] { *out = new moran_weights{build()}; });
}

std::span<const double> observations(const moran_weights* w, const double* y,
                                     int32_t n) {
  if (n != w->w.size()) {
    moran::fail(moran::errc::dimension_mismatch,
                "observations have length " + std::to_string(n) +
                    " but weights have n = " + std::to_string(w->w.size()));
  }
  return std::span<const double>(y, static_cast<std::size_t>(n));
}

}  // namespace

extern "C" {

const char* moran_last_error(void) { return t_last_error.c_str(); }

const char* moran_status_name(moran_status status) {
  switch (status) {
    case MORAN_OK: return "ok";
    case MORAN_ERR_NON_SQUARE: return "non_square";
    case MORAN_ERR_NEGATIVE_WEIGHT: return "negative_weight";
    case MORAN_ERR_NONZERO_DIAGONAL: return "nonzero_diagonal";
    case MORAN_ERR_ALL_ZERO_WEIGHTS: return "all_zero_weights";
    case MORAN_ERR_TOO_SMALL: return "too_small";
    case MORAN_ERR_Q_OUT_OF_RANGE: return "q_out_of_range";
    case MORAN_ERR_A_OUT_OF_RANGE: return "a_out_of_range";
    case MORAN_ERR_PARSE: return "parse_error";
    case MORAN_ERR_IO: return "io_error";
    case MORAN_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case MORAN_ERR_NO_CONVERGENCE: return "no_convergence";
    case MORAN_ERR_CONSTANT_OBSERVATIONS: return "constant_observations";
    case MORAN_ERR_ZERO_SCALE: return "zero_scale";
    case MORAN_ERR_DEGENERATE_BOUNDS: return "degenerate_bounds";
    case MORAN_ERR_TOO_FEW_REPLICATES: return "too_few_replicates";
    case MORAN_ERR_TOO_LARGE_FOR_EXHAUSTIVE: return "too_large_for_exhaustive";
    case MORAN_ERR_NO_CROSSING: return "no_crossing";
    case MORAN_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case MORAN_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* moran_version(void) { return "1.0.0"; }

moran_status moran_weights_from_dense(const double* raw, int32_t n,
                                      moran_weights** out) {
  if (!raw) return invalid_argument("raw matrix pointer is null");
  if (n < 1) return invalid_argument("matrix order must be positive");
  return make_weights(out, [&] {
    moran::Matrix m(n, n);
    std::memcpy(m.data(), raw, static_cast<std::size_t>(n) * n * sizeof(double));
    return moran::WeightsMatrix::from_dense(m);
  });
}

moran_status moran_weights_line_decay(int32_t n, int32_t q,
                                      moran_weights** out) {
  return make_weights(out,
                      [&] { return moran::WeightsMatrix::line_decay(n, q); });
}

moran_status moran_weights_complete(int32_t n, moran_weights** out) {
  return make_weights(out, [&] { return moran::WeightsMatrix::complete(n); });
}

moran_status moran_weights_random_uniform(int32_t n, double a, uint64_t seed,
                                          moran_weights** out) {
  return make_weights(
      out, [&] { return moran::WeightsMatrix::random_uniform(n, a, seed); });
}

moran_status moran_weights_read_csv(const char* path, int32_t has_header,
                                    moran_weights** out) {
  if (!path) return invalid_argument("path is null");
  return make_weights(out, [&] {
    return moran::WeightsMatrix::read_csv(path, has_header != 0);
  });
}

moran_status moran_weights_write_csv(const moran_weights* w,
                                     const char* path) {
  if (!w) return invalid_argument("weights handle is null");
  if (!path) return invalid_argument("path is null");
  return guarded([&] { w->w.write_csv(path); });
}

void moran_weights_free(moran_weights* w) { delete w; }

int32_t moran_weights_order(const moran_weights* w) {
  return w ? w->w.size() : 0;
}

double moran_weights_sum(const moran_weights* w) {
  return w ? w->w.sum() : 0.0;
}

moran_status moran_weights_copy_dense(const moran_weights* w, double* out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!out) return invalid_argument("output buffer is null");
  const std::size_t len =
      static_cast<std::size_t>(w->w.size()) * w->w.size();
  std::memcpy(out, w->w.matrix().data(), len * sizeof(double));
  return MORAN_OK;
}

moran_status moran_statistic(const moran_weights* w, const double* y,
                             int32_t n, double* i_out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!y || !i_out) return invalid_argument("observation or output pointer is null");
  return guarded([&] { *i_out = moran::morans_i(observations(w, y, n), w->w); });
}

moran_status moran_bounds(const moran_weights* w, double* lambda_min,
                          double* lambda_max) {
  if (!w) return invalid_argument("weights handle is null");
  if (!lambda_min || !lambda_max) return invalid_argument("output pointer is null");
  return guarded([&] {
    const moran::EigenBounds b = moran::bounds(w->w);
    *lambda_min = b.lambda_min;
    *lambda_max = b.lambda_max;
  });
}

moran_status moran_analyze(const moran_weights* w, const double* y, int32_t n,
                           moran_result* out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!y || !out) return invalid_argument("observation or output pointer is null");
  return guarded([&] {
    const moran::MoranResult r = moran::analyze(observations(w, y, n), w->w);
    out->i = r.i;
    out->i_m = r.i_m;
    out->lambda_min = r.bounds.lambda_min;
    out->lambda_max = r.bounds.lambda_max;
    out->n = r.n;
  });
}

moran_status moran_extremal_observations(const moran_weights* w,
                                         moran_extremum which, double shift,
                                         double scale, double* y_out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!y_out) return invalid_argument("output buffer is null");
  if (which != MORAN_LOWER && which != MORAN_UPPER)
    return invalid_argument("which must be MORAN_LOWER or MORAN_UPPER");
  return guarded([&] {
    const auto y = moran::extremal_observations(
        w->w,
        which == MORAN_LOWER ? moran::Extremum::lower : moran::Extremum::upper,
        shift, scale);
    std::memcpy(y_out, y.data(), y.size() * sizeof(double));
  });
}

moran_status moran_alternative(const moran_weights* w, double i,
                               double* i_m_out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!i_m_out) return invalid_argument("output pointer is null");
  return guarded([&] {
    const moran::EigenBounds b = moran::bounds(w->w);
    *i_m_out = moran::moran_alternative(i, b, w->w.size());
  });
}

moran_status moran_classify_definiteness(const moran_weights* w,
                                         moran_definiteness* out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!out) return invalid_argument("output pointer is null");
  return guarded([&] {
    switch (moran::definiteness(w->w)) {
      case moran::Definiteness::negative_definite:
        *out = MORAN_NEGATIVE_DEFINITE;
        break;
      case moran::Definiteness::indefinite:
        *out = MORAN_INDEFINITE;
        break;
      case moran::Definiteness::negative_semidefinite_boundary:
        *out = MORAN_NEGATIVE_SEMIDEFINITE_BOUNDARY;
        break;
    }
  });
}

moran_status moran_permutation_test(const moran_weights* w, const double* y,
                                    int32_t n, int32_t replicates,
                                    uint64_t seed, moran_tail tail,
                                    moran_permtest_result* out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!y || !out) return invalid_argument("observation or output pointer is null");
  moran::Alternative alt;
  switch (tail) {
    case MORAN_TAIL_GREATER: alt = moran::Alternative::greater; break;
    case MORAN_TAIL_LESS: alt = moran::Alternative::less; break;
    case MORAN_TAIL_TWO_SIDED: alt = moran::Alternative::two_sided; break;
    default: return invalid_argument("unknown tail");
  }
  return guarded([&] {
    const moran::PermutationTestResult r = moran::permutation_test(
        observations(w, y, n), w->w, replicates, seed, alt);
    out->observed_i = r.observed_i;
    out->observed_i_m = r.observed_i_m;
    out->p_value = r.p_value;
    out->null_mean = r.null_mean;
    out->replicates = r.replicates;
    out->tail = tail;
    out->seed = r.seed;
  });
}

moran_status moran_exact_null_moments(const moran_weights* w, const double* y,
                                      int32_t n, double* mean_out,
                                      uint64_t* count_out) {
  if (!w) return invalid_argument("weights handle is null");
  if (!y || !mean_out || !count_out)
    return invalid_argument("observation or output pointer is null");
  return guarded([&] {
    const moran::ExactNullMoments m =
        moran::exact_null_moments(observations(w, y, n), w->w);
    *mean_out = m.mean;
    *count_out = m.count;
  });
}

moran_status moran_table1(const int32_t* ns, int32_t ns_len, const int32_t* qs,
                          int32_t qs_len, double* lower_out,
                          double* upper_out) {
  if (!ns || !qs) return invalid_argument("grid pointer is null");
  if (ns_len < 1 || qs_len < 1) return invalid_argument("grid is empty");
  if (!lower_out || !upper_out) return invalid_argument("output buffer is null");
  return guarded([&] {
    const moran::BoundsTable table = moran::table1(
        std::span<const int>(reinterpret_cast<const int*>(ns), ns_len),
        std::span<const int>(reinterpret_cast<const int*>(qs), qs_len));
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      lower_out[k] = table.rows[k].lower;
      upper_out[k] = table.rows[k].upper;
    }
  });
}

int32_t moran_threshold_grid_size(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.05)) return 0;
  return static_cast<int32_t>(std::floor((1.0 - grid_step) / grid_step + 0.5));
}

moran_status moran_definiteness_threshold(int32_t n, int32_t trials_per_a,
                                          double grid_step, uint64_t seed,
                                          double* a_star_out,
                                          double* a_grid_out,
                                          double* fraction_out) {
  if (!a_star_out) return invalid_argument("a_star output pointer is null");
  return guarded([&] {
    const moran::ThresholdEstimate est =
        moran::definiteness_threshold(n, trials_per_a, grid_step, seed);
    *a_star_out = est.a_star;
    for (std::size_t k = 0; k < est.fraction_curve.size(); ++k) {
      if (a_grid_out) a_grid_out[k] = est.fraction_curve[k].a;
      if (fraction_out)
        fraction_out[k] = est.fraction_curve[k].fraction_negative_definite;
    }
  });
}

} /* extern "C" */
