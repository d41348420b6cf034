#include "matrix.hpp"

#include <cassert>
#include <cmath>

namespace moran {

Matrix matmul(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (int j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  assert(static_cast<std::size_t>(a.cols()) == x.size());
  std::vector<double> y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    const double* ri = a.row(i);
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += ri[j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix symmetrized(const Matrix& a) {
  assert(a.square());
  Matrix s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  const double* p = a.data();
  const std::size_t len = static_cast<std::size_t>(a.rows()) * a.cols();
  for (std::size_t k = 0; k < len; ++k) s += p[k] * p[k];
  return std::sqrt(s);
}

}  // namespace moran
