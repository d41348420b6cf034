#include "experiments.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "rng.hpp"
#include "statistic.hpp"

namespace moran {

BoundsTable table1(std::span<const int> ns, std::span<const int> qs) {
  BoundsTable table;
  table.rows.reserve(ns.size() * qs.size());
  for (int n : ns) {
    for (int q : qs) {
      const EigenBounds b = bounds(WeightsMatrix::line_decay(n, q));
      table.rows.push_back(BoundsRow{n, q, b.lambda_min, b.lambda_max});
    }
  }
  return table;
}

ThresholdEstimate definiteness_threshold(int n, int trials_per_a,
                                         double grid_step,
                                         std::uint64_t seed) {
  if (n < 3) {
    fail(errc::too_small, "threshold experiment needs n >= 3, got n = " +
                              std::to_string(n));
  }
  if (trials_per_a < 20) {
    fail(errc::too_few_replicates,
         "need at least 20 trials per grid point, got " +
             std::to_string(trials_per_a));
  }
  if (!(grid_step > 0.0 && grid_step <= 0.05)) {
    fail(errc::a_out_of_range, "grid_step must lie in (0, 0.05], got " +
                                   std::to_string(grid_step));
  }

  const int grid_points =
      static_cast<int>(std::floor((1.0 - grid_step) / grid_step + 0.5));

  ThresholdEstimate est;
  est.n = n;
  est.trials_per_a = trials_per_a;
  est.grid_step = grid_step;
  est.seed = seed;
  est.fraction_curve.reserve(grid_points);

  for (int k = 0; k < grid_points; ++k) {
    const double a = grid_step * (k + 1);
    const std::uint64_t point_seed =
        substream(seed, stream::threshold, static_cast<std::uint64_t>(k));
    std::vector<char> negdef(trials_per_a, 0);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials_per_a; ++t) {
      const auto w = WeightsMatrix::random_uniform(
          n, a, substream(point_seed, static_cast<std::uint64_t>(t)));
      negdef[t] = definiteness(w) == Definiteness::negative_definite ? 1 : 0;
    }
    int count = 0;
    for (char c : negdef) count += c;
    est.fraction_curve.push_back(
        ThresholdPoint{a, static_cast<double>(count) / trials_per_a});
  }

  // a* is the 50% crossing: first grid point whose fraction drops below
  // 0.5, interpolated against the previous point. The a -> 0 limit is the
  // complete graph, which is negative definite, so (0, 1) brackets a
  // first-point crossing.
  est.a_star = -1.0;
  double prev_a = 0.0;
  double prev_f = 1.0;
  for (const ThresholdPoint& p : est.fraction_curve) {
    if (p.fraction_negative_definite < 0.5) {
      est.a_star = prev_a + (prev_f - 0.5) * (p.a - prev_a) /
                               (prev_f - p.fraction_negative_definite);
      break;
    }
    prev_a = p.a;
    prev_f = p.fraction_negative_definite;
  }
  if (est.a_star < 0.0) {
    fail(errc::no_crossing,
         "negative-definite fraction never fell below 0.5 on the grid");
  }
  return est;
}

}  // namespace moran
