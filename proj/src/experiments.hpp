#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace moran {

struct BoundsRow {
  int n = 0;
  int q = 0;
  double lower = 0.0;  // unrounded; round to 3 decimals for display
  double upper = 0.0;
};

struct BoundsTable {
  std::vector<BoundsRow> rows;  // n-major, q-minor
};

// Attainable range of the statistic for line-decay weights over a grid of
// (n, q) pairs.
BoundsTable table1(std::span<const int> ns, std::span<const int> qs);

struct ThresholdPoint {
  double a = 0.0;
  double fraction_negative_definite = 0.0;
};

struct ThresholdEstimate {
  int n = 0;
  double a_star = 0.0;
  int trials_per_a = 0;
  double grid_step = 0.0;
  std::uint64_t seed = 0;
  std::vector<ThresholdPoint> fraction_curve;
};

// Sweeps the uniform-weight half-width a over {step, 2*step, ..., 1-step},
// drawing trials_per_a random weight matrices per grid point (seed derived
// per (a index, trial index)), and estimates the half-width a* at which the
// negative-definite fraction crosses 0.5 (linear interpolation between the
// bracketing grid points). Requires trials_per_a >= 20 and step in
// (0, 0.05].
ThresholdEstimate definiteness_threshold(int n, int trials_per_a,
                                         double grid_step, std::uint64_t seed);

}  // namespace moran
