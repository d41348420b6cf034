#include "inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"
#include "rng.hpp"
#include "statistic.hpp"

namespace moran {

namespace {

constexpr int kMinReplicates = 99;

}  // namespace

std::vector<double> permutation_null_statistics(std::span<const double> y,
                                                const WeightsMatrix& w,
                                                int replicates,
                                                std::uint64_t seed) {
  if (replicates < kMinReplicates) {
    fail(errc::too_few_replicates,
         "need at least " + std::to_string(kMinReplicates) +
             " replicates, got " + std::to_string(replicates));
  }
  const int n = w.size();
  // Validates length and non-constancy up front.
  (void)morans_i(y, w);

  // Centering commutes with relabeling, so permute the centered vector.
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= n;
  std::vector<double> yt(n);
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    yt[i] = y[i] - mean;
    sumsq += yt[i] * yt[i];
  }
  const double denom = w.sum() * sumsq;

  std::vector<double> stats(replicates);
  std::vector<double> perm(n);
  for (int r = 0; r < replicates; ++r) {
    perm = yt;
    Splitmix64 rng(substream(seed, stream::permutation,
                             static_cast<std::uint64_t>(r)));
    shuffle(std::span<double>(perm), rng);
    double quad = 0.0;
    for (int i = 0; i < n; ++i) {
      const double* wi = w.matrix().row(i);
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += wi[j] * perm[j];
      quad += perm[i] * row;
    }
    stats[r] = n * quad / denom;
  }
  return stats;
}

PermutationTestResult permutation_test(std::span<const double> y,
                                       const WeightsMatrix& w, int replicates,
                                       std::uint64_t seed, Alternative alt) {
  const std::vector<double> stats =
      permutation_null_statistics(y, w, replicates, seed);
  const MoranResult observed = analyze(y, w);

  int ge = 0;
  int le = 0;
  double sum = 0.0;
  for (double s : stats) {
    if (s >= observed.i) ++ge;
    if (s <= observed.i) ++le;
    sum += s;
  }
  const double denom = 1.0 + replicates;
  const double p_greater = (1.0 + ge) / denom;
  const double p_less = (1.0 + le) / denom;

  PermutationTestResult r;
  r.observed_i = observed.i;
  r.observed_i_m = observed.i_m;
  r.alternative = alt;
  r.replicates = replicates;
  r.seed = seed;
  r.null_mean = sum / replicates;
  switch (alt) {
    case Alternative::greater: r.p_value = p_greater; break;
    case Alternative::less: r.p_value = p_less; break;
    case Alternative::two_sided:
      r.p_value = std::min(1.0, 2.0 * std::min(p_greater, p_less));
      break;
  }
  return r;
}

ExactNullMoments exact_null_moments(std::span<const double> y,
                                    const WeightsMatrix& w, int max_n) {
  const int n = w.size();
  if (n > max_n) {
    fail(errc::too_large_for_exhaustive,
         "exhaustive enumeration is limited to n <= " +
             std::to_string(max_n) + ", got n = " + std::to_string(n));
  }
  (void)morans_i(y, w);  // validate before enumerating

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> perm(n);
  double sum = 0.0;
  std::uint64_t count = 0;
  do {
    for (int i = 0; i < n; ++i) perm[i] = y[idx[i]];
    sum += morans_i(perm, w);
    ++count;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return ExactNullMoments{sum / static_cast<double>(count), count};
}

const char* alternative_name(Alternative a) {
  switch (a) {
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
    case Alternative::two_sided: return "two_sided";
  }
  return "unknown";
}

}  // namespace moran
