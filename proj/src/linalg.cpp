#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"

namespace moran {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergenceFactor = 1e-12;
constexpr double kBasisTolerance = 1e-12;

double offdiag_norm(const Matrix& a) {
  const int m = a.rows();
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double* ri = a.row(i);
    for (int j = i + 1; j < m; ++j) s += ri[j] * ri[j];
  }
  return std::sqrt(2.0 * s);
}

// One cyclic pass over the upper triangle. `vt`, when non-null, accumulates
// the transposed eigenvector matrix (row r is basis vector r).
void jacobi_sweep(Matrix& a, Matrix* vt) {
  const int m = a.rows();
  for (int p = 0; p < m - 1; ++p) {
    for (int q = p + 1; q < m; ++q) {
      const double apq = a(p, q);
      if (apq == 0.0) continue;
      const double app = a(p, p);
      const double aqq = a(q, q);
      const double theta = 0.5 * (aqq - app) / apq;
      double t;
      if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;  // avoids overflow in theta^2; rotation ~ identity
      } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
      }
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      const double tau = s / (1.0 + c);

      double* rp = a.row(p);
      double* rq = a.row(q);
      for (int r = 0; r < m; ++r) {
        const double arp = rp[r];
        const double arq = rq[r];
        rp[r] = arp - s * (arq + tau * arp);
        rq[r] = arq + s * (arp - tau * arq);
      }
      // The 2x2 pivot block has a closed form; overwrite what the row pass
      // left there, then mirror the rows into the columns.
      rp[p] = app - t * apq;
      rq[q] = aqq + t * apq;
      rp[q] = 0.0;
      rq[p] = 0.0;
      for (int r = 0; r < m; ++r) {
        a(r, p) = rp[r];
        a(r, q) = rq[r];
      }

      if (vt) {
        double* vp = vt->row(p);
        double* vq = vt->row(q);
        for (int r = 0; r < m; ++r) {
          const double vrp = vp[r];
          const double vrq = vq[r];
          vp[r] = vrp - s * (vrq + tau * vrp);
          vq[r] = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
}

// Diagonalizes `a` in place; returns the accumulated V^T when requested.
Matrix jacobi_diagonalize(Matrix& a, bool want_vectors) {
  const int m = a.rows();
  Matrix vt = want_vectors ? Matrix::identity(m) : Matrix();
  const double scale = frobenius_norm(a);
  if (scale == 0.0 || m == 1) return vt;
  const double tol = kConvergenceFactor * scale;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a) <= tol) return vt;
    jacobi_sweep(a, want_vectors ? &vt : nullptr);
  }
  if (offdiag_norm(a) <= tol) return vt;
  fail(errc::no_convergence,
       "jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
           " sweeps (order " + std::to_string(m) + ")");
}

std::vector<int> ascending_order(const std::vector<double>& values) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return values[i] < values[j]; });
  return idx;
}

Matrix prepare_symmetric(const Matrix& a) {
  if (!a.square()) {
    fail(errc::dimension_mismatch,
         "eigensolver needs a square matrix, got " + std::to_string(a.rows()) +
             "x" + std::to_string(a.cols()));
  }
  return symmetrized(a);
}

}  // namespace

OrthonormalBasis OrthonormalBasis::helmert(int n) {
  if (n < 2) {
    fail(errc::too_small,
         "helmert basis needs n >= 2, got n = " + std::to_string(n));
  }
  Matrix h(n, n - 1);
  for (int i = 1; i < n; ++i) {
    const double norm = std::sqrt(static_cast<double>(i) * (i + 1));
    for (int r = 0; r < i; ++r) h(r, i - 1) = 1.0 / norm;
    h(i, i - 1) = -static_cast<double>(i) / norm;
  }
  return OrthonormalBasis(std::move(h));
}

OrthonormalBasis OrthonormalBasis::from_columns(Matrix h) {
  const int n = h.rows();
  const int m = h.cols();
  if (n < 2 || m != n - 1) {
    fail(errc::dimension_mismatch,
         "basis must be n x (n-1) with n >= 2, got " + std::to_string(n) +
             "x" + std::to_string(m));
  }
  for (int i = 0; i < m; ++i) {
    double ones_dot = 0.0;
    for (int r = 0; r < n; ++r) ones_dot += h(r, i);
    if (std::abs(ones_dot) > kBasisTolerance) {
      fail(errc::dimension_mismatch,
           "basis column " + std::to_string(i) +
               " is not orthogonal to the ones vector");
    }
    for (int j = i; j < m; ++j) {
      double dot = 0.0;
      for (int r = 0; r < n; ++r) dot += h(r, i) * h(r, j);
      const double target = i == j ? 1.0 : 0.0;
      if (std::abs(dot - target) > kBasisTolerance) {
        fail(errc::dimension_mismatch,
             "basis columns " + std::to_string(i) + "," + std::to_string(j) +
                 " are not orthonormal");
      }
    }
  }
  return OrthonormalBasis(std::move(h));
}

ReducedMatrix reduce(const WeightsMatrix& w, const OrthonormalBasis& basis) {
  if (basis.n() != w.size()) {
    fail(errc::dimension_mismatch,
         "basis is for n = " + std::to_string(basis.n()) +
             " but weights have n = " + std::to_string(w.size()));
  }
  const int n = w.size();
  const Matrix& h = basis.matrix();
  Matrix a = matmul(transpose(h), matmul(w.matrix(), h));
  const double scale = 1.0 / (w.sum() / static_cast<double>(n));  // 1/(n w_bar)
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j) a(i, j) *= scale;
  return ReducedMatrix(symmetrized(a));
}

EigenDecomposition symmetric_eigen(const Matrix& a_in) {
  Matrix a = prepare_symmetric(a_in);
  const int m = a.rows();
  Matrix vt = jacobi_diagonalize(a, true);

  std::vector<double> diag(m);
  for (int i = 0; i < m; ++i) diag[i] = a(i, i);
  const std::vector<int> order = ascending_order(diag);

  EigenDecomposition e;
  e.values.resize(m);
  e.vectors = Matrix(m, m);
  for (int k = 0; k < m; ++k) {
    const int src = order[k];
    e.values[k] = diag[src];
    const double* v = vt.row(src);
    int imax = 0;
    for (int r = 1; r < m; ++r) {
      if (std::abs(v[r]) > std::abs(v[imax])) imax = r;
    }
    const double flip = v[imax] < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < m; ++r) e.vectors(r, k) = flip * v[r];
  }
  return e;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a_in) {
  Matrix a = prepare_symmetric(a_in);
  jacobi_diagonalize(a, false);
  std::vector<double> values(a.rows());
  for (int i = 0; i < a.rows(); ++i) values[i] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace moran
