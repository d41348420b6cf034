#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "weights.hpp"

namespace moran {

enum class Alternative { greater, less, two_sided };

struct PermutationTestResult {
  double observed_i = 0.0;
  double observed_i_m = 0.0;
  double p_value = 0.0;  // add-one rule, always in (0, 1]
  double null_mean = 0.0;
  Alternative alternative = Alternative::greater;
  int replicates = 0;
  std::uint64_t seed = 0;
};

// The statistic under `replicates` uniform random relabelings of y.
// Replicate r draws its permutation from substream(seed, r), so the result
// is independent of evaluation order. Requires replicates >= 99.
std::vector<double> permutation_null_statistics(std::span<const double> y,
                                                const WeightsMatrix& w,
                                                int replicates,
                                                std::uint64_t seed);

// Conditional randomization test of spatial independence: permute the
// observations across units, rank the observed statistic among the
// replicates, add-one p-value. two_sided doubles the smaller tail and caps
// at 1.
PermutationTestResult permutation_test(std::span<const double> y,
                                       const WeightsMatrix& w, int replicates,
                                       std::uint64_t seed, Alternative alt);

struct ExactNullMoments {
  double mean = 0.0;
  std::uint64_t count = 0;  // n!
};

// Exact permutation-null mean of the statistic by full enumeration.
// Rejected above max_n; the default keeps the n! evaluations near a second
// (8! = 40320).
ExactNullMoments exact_null_moments(std::span<const double> y,
                                    const WeightsMatrix& w, int max_n = 8);

const char* alternative_name(Alternative a);

}  // namespace moran
