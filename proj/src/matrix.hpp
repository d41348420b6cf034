#pragma once

#include <span>
#include <vector>

namespace moran {

// Dense row-major matrix of doubles. Just enough linear algebra for this
// library; the sizes involved (n up to a few hundred) do not justify more.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(int i, int j) noexcept {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const noexcept {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  double* row(int i) noexcept { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const noexcept {
    return a_.data() + static_cast<std::size_t>(i) * cols_;
  }

  double* data() noexcept { return a_.data(); }
  const double* data() const noexcept { return a_.data(); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

// (a + a^T) / 2 for square a; kills rounding asymmetry.
Matrix symmetrized(const Matrix& a);

double frobenius_norm(const Matrix& a);

}  // namespace moran
