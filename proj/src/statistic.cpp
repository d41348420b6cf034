#include "statistic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace moran {

namespace {

constexpr double kDefinitenessTolerance = 1e-12;
// Spectrum spread below which the reduced matrix is treated as the
// one-point (complete-graph) case.
constexpr double kDegenerateSpread = 1e-12;

void check_length(std::size_t y_len, int n) {
  if (y_len != static_cast<std::size_t>(n)) {
    fail(errc::dimension_mismatch,
         "observations have length " + std::to_string(y_len) +
             " but weights have n = " + std::to_string(n));
  }
}

// Centers y; throws when the centered sum of squares is indistinguishable
// from zero (1e-12 * n * max(1, ybar^2)).
std::vector<double> centered(std::span<const double> y, double* sumsq_out) {
  const int n = static_cast<int>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  std::vector<double> yt(n);
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    yt[i] = y[i] - mean;
    sumsq += yt[i] * yt[i];
  }
  if (sumsq <= 1e-12 * n * std::max(1.0, mean * mean)) {
    fail(errc::constant_observations,
         "observations are constant; the statistic is undefined");
  }
  *sumsq_out = sumsq;
  return yt;
}

}  // namespace

double morans_i(std::span<const double> y, const WeightsMatrix& w) {
  const int n = w.size();
  check_length(y.size(), n);
  double sumsq = 0.0;
  const std::vector<double> yt = centered(y, &sumsq);
  double quad = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* wi = w.matrix().row(i);
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += wi[j] * yt[j];
    quad += yt[i] * row;
  }
  return n * quad / (w.sum() * sumsq);
}

EigenBounds bounds(const WeightsMatrix& w) {
  const auto basis = OrthonormalBasis::helmert(w.size());
  const auto eig = symmetric_eigen(reduce(w, basis));
  const int m = static_cast<int>(eig.values.size());
  EigenBounds b;
  b.lambda_min = eig.values.front();
  b.lambda_max = eig.values.back();
  b.j_min.resize(m);
  b.j_max.resize(m);
  for (int r = 0; r < m; ++r) {
    b.j_min[r] = eig.vectors(r, 0);
    b.j_max[r] = eig.vectors(r, m - 1);
  }
  return b;
}

std::vector<double> extremal_observations(const WeightsMatrix& w,
                                          Extremum which, double shift,
                                          double scale) {
  if (scale == 0.0) {
    fail(errc::zero_scale, "scale must be nonzero; the shift direction alone "
                           "has zero variance");
  }
  const EigenBounds b = bounds(w);
  const std::vector<double>& j = which == Extremum::lower ? b.j_min : b.j_max;
  const auto basis = OrthonormalBasis::helmert(w.size());
  std::vector<double> y = matvec(basis.matrix(), j);
  for (double& v : y) v = shift + scale * v;
  return y;
}

double moran_alternative(double i, const EigenBounds& b, int n) {
  // A one-point spectrum (the complete graph) makes both branch divisors
  // vanish: the statistic is constant at the attained lower bound, so the
  // value saturates before any division happens.
  if (b.lambda_max - b.lambda_min <= kDegenerateSpread) return -1.0;
  const double m = static_cast<double>(n - 1);
  const double ic = std::clamp(i, b.lambda_min, b.lambda_max);
  const double s = m * ic + 1.0;
  const double upper_div = m * b.lambda_max + 1.0;
  const double lower_div = std::abs(m * b.lambda_min + 1.0);
  if (s < 0.0) return s / lower_div;
  if (upper_div > 0.0) return s / upper_div;
  // Trace -1 forces lambda_max >= -1/(n-1) for any real reduced spectrum, so
  // a nonpositive divisor here means the caller supplied bounds no weights
  // matrix can produce.
  fail(errc::degenerate_bounds,
       "upper branch divisor (n-1)*lambda_max + 1 = " +
           std::to_string(upper_div) + " is not positive");
}

MoranResult analyze(std::span<const double> y, const WeightsMatrix& w) {
  MoranResult r;
  r.n = w.size();
  r.bounds = bounds(w);
  r.i = morans_i(y, w);
  r.i_m = moran_alternative(r.i, r.bounds, r.n);
  return r;
}

Definiteness definiteness(const WeightsMatrix& w) {
  const auto basis = OrthonormalBasis::helmert(w.size());
  const std::vector<double> values = symmetric_eigenvalues(reduce(w, basis));
  const double lambda_max = values.back();
  if (lambda_max < -kDefinitenessTolerance) return Definiteness::negative_definite;
  if (lambda_max > kDefinitenessTolerance) return Definiteness::indefinite;
  return Definiteness::negative_semidefinite_boundary;
}

const char* definiteness_name(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::negative_semidefinite_boundary:
      return "negative_semidefinite_boundary";
  }
  return "unknown";
}

}  // namespace moran
