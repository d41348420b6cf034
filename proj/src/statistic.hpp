#pragma once

#include <span>
#include <vector>

#include "linalg.hpp"
#include "weights.hpp"

namespace moran {

// Extreme eigenvalues of the reduced matrix together with their
// sign-normalized unit eigenvectors (in the reduced (n-1)-space).
struct EigenBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  std::vector<double> j_min;
  std::vector<double> j_max;
};

struct MoranResult {
  double i = 0.0;    // Moran's I
  double i_m = 0.0;  // rescaled alternative, exact range [-1, 1]
  int n = 0;
  EigenBounds bounds;
};

enum class Extremum { lower, upper };

enum class Definiteness {
  negative_definite,
  indefinite,
  negative_semidefinite_boundary,
};

// Moran's I from the defining formula,
//   n * sum_ij w_ij (y_i - ybar)(y_j - ybar) / (w_sum * sum_i (y_i - ybar)^2),
// O(n^2), no basis or eigensolver involved.
double morans_i(std::span<const double> y, const WeightsMatrix& w);

// Exact attainable range of the statistic for this weights matrix: the
// extreme eigenvalues of reduce(w, helmert(n)).
EigenBounds bounds(const WeightsMatrix& w);

// An observation vector attaining the requested bound:
// shift * ones + scale * H j. Any shift and any nonzero scale give the same
// statistic.
std::vector<double> extremal_observations(const WeightsMatrix& w,
                                          Extremum which, double shift,
                                          double scale);

// Monotone rescaling of the statistic onto [-1, 1]: s = (n-1) i + 1 divided
// by |(n-1) lambda_min + 1| when s < 0 and by (n-1) lambda_max + 1
// otherwise. i is clamped into [lambda_min, lambda_max] first, which pins
// the endpoints to exactly -1 and 1. When all eigenvalues coincide (the
// complete graph) the statistic is constant at lambda_min and the value
// saturates at -1.
double moran_alternative(double i, const EigenBounds& b, int n);

// Statistic, bounds and the rescaled value from one eigendecomposition.
MoranResult analyze(std::span<const double> y, const WeightsMatrix& w);

// Sign classification of the reduced matrix: negative_definite when
// lambda_max < -1e-12 (the statistic cannot be positive), indefinite when
// lambda_max > 1e-12, boundary otherwise.
Definiteness definiteness(const WeightsMatrix& w);

const char* definiteness_name(Definiteness d);

}  // namespace moran
