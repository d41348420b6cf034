#pragma once

#include <vector>

#include "matrix.hpp"
#include "weights.hpp"

namespace moran {

// n x (n-1) matrix whose columns are an orthonormal basis of the subspace
// of R^n orthogonal to the ones vector, so H H^T = I - 11^T/n.
class OrthonormalBasis {
 public:
  // Column i (1-based) is (1,...,1, -i, 0,...,0) / sqrt(i(i+1)) with i ones.
  static OrthonormalBasis helmert(int n);

  // Adopts an arbitrary basis after checking orthonormality and
  // orthogonality to the ones vector (max deviation 1e-12).
  static OrthonormalBasis from_columns(Matrix h);

  int n() const noexcept { return h_.rows(); }
  const Matrix& matrix() const noexcept { return h_; }

 private:
  explicit OrthonormalBasis(Matrix h) : h_(std::move(h)) {}
  Matrix h_;
};

// The (n-1) x (n-1) symmetric matrix H^T W H / (n w_bar). Its trace is -1
// for every valid weights matrix, and its extreme eigenvalues are the exact
// attainable range of the statistic.
class ReducedMatrix {
 public:
  int order() const noexcept { return a_.rows(); }
  const Matrix& matrix() const noexcept { return a_; }

  friend ReducedMatrix reduce(const WeightsMatrix& w,
                              const OrthonormalBasis& basis);

 private:
  explicit ReducedMatrix(Matrix a) : a_(std::move(a)) {}
  Matrix a_;
};

ReducedMatrix reduce(const WeightsMatrix& w, const OrthonormalBasis& basis);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

// Full spectrum of a symmetric matrix by cyclic Jacobi rotations.
// Converges when the off-diagonal Frobenius norm falls below 1e-12 times
// the Frobenius norm of the input; gives up after 100 sweeps. Each
// eigenvector is sign-normalized so its largest-magnitude entry (first such
// entry on ties) is positive. The input is read as (a + a^T)/2.
EigenDecomposition symmetric_eigen(const Matrix& a);

inline EigenDecomposition symmetric_eigen(const ReducedMatrix& a) {
  return symmetric_eigen(a.matrix());
}

// Eigenvalues only (ascending); skips the eigenvector accumulation.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

inline std::vector<double> symmetric_eigenvalues(const ReducedMatrix& a) {
  return symmetric_eigenvalues(a.matrix());
}

}  // namespace moran
