#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace moran;
using moran::testing::max_abs_diff;
using moran::testing::random_weights;

using moran::testing::random_ones_complement_basis;

namespace {

void check_basis_invariants(const OrthonormalBasis& basis) {
  const int n = basis.n();
  const Matrix& h = basis.matrix();
  const Matrix hth = matmul(transpose(h), h);
  CHECK(max_abs_diff(hth, Matrix::identity(n - 1)) < 1e-12);
  for (int i = 0; i < n - 1; ++i) {
    double dot = 0.0;
    for (int r = 0; r < n; ++r) dot += h(r, i);
    CHECK(std::abs(dot) < 1e-12);
  }
  Matrix centering(n, n, -1.0 / n);
  for (int i = 0; i < n; ++i) centering(i, i) += 1.0;
  CHECK(max_abs_diff(matmul(h, transpose(h)), centering) < 1e-12);
}

}  // namespace

TEST_CASE("helmert columns follow the closed form") {
  const auto b2 = OrthonormalBasis::helmert(2);
  CHECK(b2.matrix()(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(b2.matrix()(1, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));

  const auto b3 = OrthonormalBasis::helmert(3);
  const double r6 = std::sqrt(6.0);
  CHECK(b3.matrix()(0, 1) == doctest::Approx(1.0 / r6).epsilon(1e-15));
  CHECK(b3.matrix()(1, 1) == doctest::Approx(1.0 / r6).epsilon(1e-15));
  CHECK(b3.matrix()(2, 1) == doctest::Approx(-2.0 / r6).epsilon(1e-15));

  CHECK_THROWS_AS(OrthonormalBasis::helmert(1), error);
}

TEST_CASE("helmert bases satisfy the orthonormality invariants") {
  for (int n : {2, 3, 10, 40}) check_basis_invariants(OrthonormalBasis::helmert(n));
}

TEST_CASE("from_columns validates") {
  auto good = OrthonormalBasis::helmert(5);
  CHECK_NOTHROW(OrthonormalBasis::from_columns(good.matrix()));

  Matrix bad = good.matrix();
  bad(0, 0) += 1e-6;
  CHECK_THROWS_AS(OrthonormalBasis::from_columns(std::move(bad)), error);

  CHECK_THROWS_AS(OrthonormalBasis::from_columns(Matrix(5, 3)), error);
}

TEST_CASE("reduce of the complete graph is -(n-1)^{-1} I") {
  const auto red =
      reduce(WeightsMatrix::complete(4), OrthonormalBasis::helmert(4));
  Matrix expected = Matrix::identity(3);
  for (int i = 0; i < 3; ++i) expected(i, i) = -1.0 / 3.0;
  CHECK(max_abs_diff(red.matrix(), expected) < 1e-15);
}

TEST_CASE("reduced matrices have trace -1") {
  Splitmix64 g(substream(21, 0));
  for (int rep = 0; rep < 30; ++rep) {
    const auto w = random_weights(g, 3, 40);
    const auto red = reduce(w, OrthonormalBasis::helmert(w.size()));
    double tr = 0.0;
    for (int i = 0; i < red.order(); ++i) tr += red.matrix()(i, i);
    CHECK(tr == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("reduce rejects mismatched dimensions") {
  CHECK_THROWS_AS(
      reduce(WeightsMatrix::complete(4), OrthonormalBasis::helmert(5)), error);
}

TEST_CASE("eigen of a diagonal matrix is immediate") {
  Matrix a = Matrix::identity(3);
  for (int i = 0; i < 3; ++i) a(i, i) = -1.0 / 3.0;
  const auto e = symmetric_eigen(a);
  for (double v : e.values) CHECK(v == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(max_abs_diff(e.vectors, Matrix::identity(3)) == 0.0);
}

TEST_CASE("eigen of the 2x2 exchange matrix") {
  Matrix a(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  const auto e = symmetric_eigen(a);
  const double r2 = 1.0 / std::sqrt(2.0);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  // sign convention: the first largest-magnitude entry is positive
  CHECK(e.vectors(0, 0) == doctest::Approx(r2).epsilon(1e-14));
  CHECK(e.vectors(1, 0) == doctest::Approx(-r2).epsilon(1e-14));
  CHECK(e.vectors(0, 1) == doctest::Approx(r2).epsilon(1e-14));
  CHECK(e.vectors(1, 1) == doctest::Approx(r2).epsilon(1e-14));
}

TEST_CASE("line-decay reductions reproduce the reference bounds") {
  {
    const auto w = WeightsMatrix::line_decay(10, 1);
    const auto vals = symmetric_eigenvalues(reduce(w, OrthonormalBasis::helmert(10)));
    CHECK(std::abs(vals.front() - (-1.066)) < 5e-4);
    CHECK(std::abs(vals.back() - 0.935) < 5e-4);
  }
  {
    const auto w = WeightsMatrix::line_decay(20, 2);
    const auto vals = symmetric_eigenvalues(reduce(w, OrthonormalBasis::helmert(20)));
    CHECK(std::abs(vals.front() - (-0.526)) < 5e-4);
    CHECK(std::abs(vals.back() - 0.981) < 5e-4);
  }
}

TEST_CASE("eigen reconstruction, residual and orthonormality") {
  Splitmix64 g(substream(33, 0));
  for (int rep = 0; rep < 15; ++rep) {
    const int m = 2 + static_cast<int>(g.below(24));
    Matrix a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) a(i, j) = a(j, i) = g.uniform(-1.0, 1.0);
    const auto e = symmetric_eigen(a);
    const double radius =
        std::max(std::abs(e.values.front()), std::abs(e.values.back()));

    CHECK(std::is_sorted(e.values.begin(), e.values.end()));

    // A v = lambda v
    for (int k = 0; k < m; ++k) {
      std::vector<double> v(m);
      for (int r = 0; r < m; ++r) v[r] = e.vectors(r, k);
      const auto av = matvec(a, v);
      for (int r = 0; r < m; ++r)
        CHECK(std::abs(av[r] - e.values[k] * v[r]) < 1e-9 * std::max(1.0, radius));
    }

    // V^T V = I
    const Matrix vtv = matmul(transpose(e.vectors), e.vectors);
    CHECK(max_abs_diff(vtv, Matrix::identity(m)) < 1e-10);

    // V diag(values) V^T = A
    Matrix vd = e.vectors;
    for (int r = 0; r < m; ++r)
      for (int k = 0; k < m; ++k) vd(r, k) *= e.values[k];
    CHECK(max_abs_diff(matmul(vd, transpose(e.vectors)), a) <
          1e-8 * std::max(1.0, radius));

    // sign convention
    for (int k = 0; k < m; ++k) {
      int imax = 0;
      for (int r = 1; r < m; ++r)
        if (std::abs(e.vectors(r, k)) > std::abs(e.vectors(imax, k))) imax = r;
      CHECK(e.vectors(imax, k) > 0.0);
    }
  }
}

TEST_CASE("eigen output is deterministic") {
  Splitmix64 g(substream(44, 0));
  Matrix a(9, 9);
  for (int i = 0; i < 9; ++i)
    for (int j = i; j < 9; ++j) a(i, j) = a(j, i) = g.uniform(-2.0, 2.0);
  const auto e1 = symmetric_eigen(a);
  const auto e2 = symmetric_eigen(a);
  CHECK(e1.values == e2.values);
  CHECK(moran::testing::bitwise_equal(e1.vectors, e2.vectors));
}

TEST_CASE("eigenvalues match the Sturm bisection oracle") {
  Splitmix64 g(substream(55, 0));
  for (int rep = 0; rep < 20; ++rep) {
    Matrix a(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) a(i, j) = a(j, i) = g.uniform(-1.0, 1.0);
    const auto jacobi = symmetric_eigenvalues(a);
    const auto oracle = moran::testing::sturm_eigenvalues(a);
    for (int k = 0; k < 5; ++k)
      CHECK(std::abs(jacobi[k] - oracle[k]) < 1e-8);
  }
}

TEST_CASE("bounds do not depend on the basis") {
  Splitmix64 g(substream(66, 0));
  for (int rep = 0; rep < 8; ++rep) {
    const auto w = random_weights(g, 4, 20);
    const auto helmert_vals =
        symmetric_eigenvalues(reduce(w, OrthonormalBasis::helmert(w.size())));
    const auto other_vals = symmetric_eigenvalues(
        reduce(w, random_ones_complement_basis(w.size(), 1000 + rep)));
    for (std::size_t k = 0; k < helmert_vals.size(); ++k)
      CHECK(std::abs(helmert_vals[k] - other_vals[k]) < 1e-8);
  }
}

TEST_CASE("the smallest reduced eigenvalue is always negative") {
  Splitmix64 g(substream(77, 0));
  for (int rep = 0; rep < 20; ++rep) {
    const auto w = random_weights(g);
    const auto vals =
        symmetric_eigenvalues(reduce(w, OrthonormalBasis::helmert(w.size())));
    CHECK(vals.front() < 0.0);
  }
}
