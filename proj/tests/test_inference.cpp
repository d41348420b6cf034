#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "error.hpp"
#include "inference.hpp"
#include "statistic.hpp"
#include "testutil.hpp"

using namespace moran;
using moran::testing::random_observations;
using moran::testing::random_weights;

TEST_CASE("permutation test is deterministic in its seed") {
  Splitmix64 g(substream(100, 0));
  const auto w = random_weights(g, 5, 15);
  const auto y = random_observations(g, w.size());
  const auto r1 = permutation_test(y, w, 199, 42, Alternative::greater);
  const auto r2 = permutation_test(y, w, 199, 42, Alternative::greater);
  CHECK(r1.p_value == r2.p_value);
  CHECK(r1.null_mean == r2.null_mean);
  // a different seed draws different permutations
  CHECK(permutation_null_statistics(y, w, 199, 42) !=
        permutation_null_statistics(y, w, 199, 43));
}

TEST_CASE("observed maximum gives the smallest attainable p-value") {
  const auto w = WeightsMatrix::line_decay(20, 1);
  const auto y = extremal_observations(w, Extremum::upper, 0.0, 1.0);
  for (std::uint64_t seed : {1ull, 7ull, 123ull}) {
    const auto r = permutation_test(y, w, 999, seed, Alternative::greater);
    CHECK(std::abs(r.observed_i - 1.006) < 5e-4);
    CHECK(r.p_value <= 0.01);
    // no relabeling can exceed the attainable maximum
    const auto stats = permutation_null_statistics(y, w, 999, seed);
    CHECK(*std::max_element(stats.begin(), stats.end()) < r.observed_i);
    CHECK(r.p_value == doctest::Approx(1.0 / 1000.0).epsilon(1e-15));
  }
}

TEST_CASE("p-values follow the add-one rule") {
  Splitmix64 g(substream(101, 0));
  const auto w = random_weights(g, 5, 12);
  const auto y = random_observations(g, w.size());
  const int reps = 499;
  const auto stats = permutation_null_statistics(y, w, reps, 5);
  const double observed = morans_i(y, w);
  int ge = 0, le = 0;
  for (double s : stats) {
    ge += s >= observed;
    le += s <= observed;
  }
  const auto rg = permutation_test(y, w, reps, 5, Alternative::greater);
  const auto rl = permutation_test(y, w, reps, 5, Alternative::less);
  const auto rt = permutation_test(y, w, reps, 5, Alternative::two_sided);
  CHECK(rg.p_value == (1.0 + ge) / (1.0 + reps));
  CHECK(rl.p_value == (1.0 + le) / (1.0 + reps));
  CHECK(rt.p_value ==
        std::min(1.0, 2.0 * std::min(rg.p_value, rl.p_value)));
  CHECK(rg.p_value > 0.0);
  CHECK(rg.p_value <= 1.0);
}

TEST_CASE("ranking by the rescaled statistic gives identical p-values") {
  Splitmix64 g(substream(102, 0));
  for (int rep = 0; rep < 10; ++rep) {
    const auto w = random_weights(g, 5, 15);
    const auto y = random_observations(g, w.size());
    const EigenBounds b = bounds(w);
    const int n = w.size();
    const int reps = 199;
    const std::uint64_t seed = 900 + rep;

    const auto stats = permutation_null_statistics(y, w, reps, seed);
    const double obs_i = morans_i(y, w);
    const double obs_im = moran_alternative(obs_i, b, n);
    int ge_i = 0, le_i = 0, ge_m = 0, le_m = 0;
    for (double s : stats) {
      ge_i += s >= obs_i;
      le_i += s <= obs_i;
      const double sm = moran_alternative(s, b, n);
      ge_m += sm >= obs_im;
      le_m += sm <= obs_im;
    }
    CHECK(ge_i == ge_m);
    CHECK(le_i == le_m);
  }
}

TEST_CASE("permutation test input validation") {
  const auto w = WeightsMatrix::complete(5);
  const std::vector<double> y{1.0, 2.0, 0.5, -1.0, 0.0};
  CHECK_THROWS_AS(permutation_test(y, w, 98, 1, Alternative::greater), error);
  const std::vector<double> flat(5, 3.0);
  CHECK_THROWS_AS(permutation_test(flat, w, 999, 1, Alternative::greater),
                  error);
}

TEST_CASE("null mean approaches -1/(n-1)") {
  Splitmix64 g(substream(103, 0));
  const auto w = WeightsMatrix::line_decay(10, 2);
  const auto y = random_observations(g, 10);
  const auto r = permutation_test(y, w, 5000, 11, Alternative::greater);
  CHECK(std::abs(r.null_mean - (-1.0 / 9.0)) < 0.05);
}

TEST_CASE("exact null mean is -1/(n-1) for any y and W") {
  Splitmix64 g(substream(104, 0));
  const auto w = random_weights(g, 5, 5);
  const auto y = random_observations(g, 5);
  const auto m = exact_null_moments(y, w);
  CHECK(m.count == 120);
  CHECK(std::abs(m.mean - (-0.25)) < 1e-10);
}

TEST_CASE("exact null mean on the complete graph is the constant statistic") {
  const std::vector<double> y{1.0, -1.0, 0.0};
  const auto m = exact_null_moments(y, WeightsMatrix::complete(3));
  CHECK(m.count == 6);
  CHECK(std::abs(m.mean - (-0.5)) < 1e-14);
}

TEST_CASE("exhaustive enumeration is capped at n = 8 by default") {
  Splitmix64 g(substream(105, 0));
  const auto w = WeightsMatrix::complete(9);
  const auto y = random_observations(g, 9);
  CHECK_THROWS_AS(exact_null_moments(y, w), error);
  // the cap can be raised explicitly
  const auto m = exact_null_moments(y, w, 9);
  CHECK(m.count == 362880);
  CHECK(std::abs(m.mean - (-1.0 / 8.0)) < 1e-10);
}

TEST_CASE("replicate substreams do not depend on the replicate count") {
  Splitmix64 g(substream(106, 0));
  const auto w = random_weights(g, 6, 12);
  const auto y = random_observations(g, w.size());
  const auto short_run = permutation_null_statistics(y, w, 100, 13);
  const auto long_run = permutation_null_statistics(y, w, 250, 13);
  for (int r = 0; r < 100; ++r) CHECK(short_run[r] == long_run[r]);
}
