#pragma once

#include <cstdint>
#include <string>

#include "matrix.hpp"

namespace moran {

// Validated spatial weights: symmetric with zero diagonal, nonnegative
// off-diagonal entries, at least one positive weight, n >= 3. Construction
// symmetrizes eagerly, so downstream code may assume exact symmetry.
class WeightsMatrix {
 public:
  // Validates raw and stores (raw + raw^T) / 2.
  static WeightsMatrix from_dense(const Matrix& raw);

  // Units on a line with equal spacing: w_ij = 2^(1-|i-j|) for
  // 1 <= |i-j| <= q, zero otherwise. Requires 1 <= q <= n-1.
  static WeightsMatrix line_decay(int n, int q);

  // Complete graph: every off-diagonal weight is one.
  static WeightsMatrix complete(int n);

  // n(n-1) independent uniforms on (1-a, 1+a) assigned to the off-diagonal
  // cells in row-major order, then symmetrized. Identical seeds give
  // bit-identical matrices.
  static WeightsMatrix random_uniform(int n, double a, std::uint64_t seed);

  // Dense numeric CSV, one matrix row per line, optional single header row.
  static WeightsMatrix read_csv(const std::string& path, bool has_header = false);
  // Writes with 17 significant digits so read_csv(write_csv(w)) round-trips
  // bit-exactly.
  void write_csv(const std::string& path) const;

  int size() const noexcept { return n_; }
  const Matrix& matrix() const noexcept { return w_; }
  double operator()(int i, int j) const noexcept { return w_(i, j); }

  // Sum of all entries.
  double sum() const noexcept { return w_sum_; }
  // Mean over all n^2 cells (the paper's normalizer).
  double mean() const noexcept {
    return w_sum_ / (static_cast<double>(n_) * static_cast<double>(n_));
  }

 private:
  WeightsMatrix(Matrix w, double w_sum)
      : w_(std::move(w)), n_(w_.rows()), w_sum_(w_sum) {}

  Matrix w_;
  int n_;
  double w_sum_;
};

}  // namespace moran
