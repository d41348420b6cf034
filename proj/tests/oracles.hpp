#pragma once

// Independent eigenvalue oracle for small symmetric matrices: the
// characteristic polynomial is built with Faddeev-LeVerrier and its roots
// are isolated by bisection on the polynomial's Sturm chain. Shares no code
// with the Jacobi path. Assumes distinct eigenvalues (Sturm chains count
// distinct roots), which holds almost surely for the random inputs the
// tests feed it.

#include <cmath>
#include <vector>

#include "matrix.hpp"

namespace moran::testing {

// Coefficients c[0..m] of det(xI - A) = sum_k c[k] x^k, c[m] = 1.
inline std::vector<double> characteristic_polynomial(const Matrix& a) {
  const int m = a.rows();
  std::vector<double> c(m + 1, 0.0);
  c[m] = 1.0;
  Matrix nk = Matrix::identity(m);
  for (int k = 1; k <= m; ++k) {
    const Matrix an = matmul(a, nk);
    double tr = 0.0;
    for (int i = 0; i < m; ++i) tr += an(i, i);
    c[m - k] = -tr / k;
    if (k < m) {
      nk = an;
      for (int i = 0; i < m; ++i) nk(i, i) += c[m - k];
    }
  }
  return c;
}

namespace detail {

// Drops leading coefficients that are negligible against the largest one
// and rescales to unit max magnitude (positive scaling keeps signs).
inline void normalize_poly(std::vector<double>& p) {
  double maxc = 0.0;
  for (double v : p) maxc = std::max(maxc, std::abs(v));
  if (maxc == 0.0) {
    p.clear();
    return;
  }
  while (p.size() > 1 && std::abs(p.back()) < 1e-14 * maxc) p.pop_back();
  for (double& v : p) v /= maxc;
}

inline std::vector<double> poly_derivative(const std::vector<double>& p) {
  std::vector<double> d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
  return d;
}

inline std::vector<double> poly_remainder(std::vector<double> u,
                                          const std::vector<double>& v) {
  while (u.size() >= v.size()) {
    const double f = u.back() / v.back();
    const std::size_t shift = u.size() - v.size();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) u[shift + i] -= f * v[i];
    u.pop_back();
  }
  return u;
}

inline double horner(const std::vector<double>& p, double x) {
  double v = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * x + p[k];
  return v;
}

}  // namespace detail

struct SturmChain {
  std::vector<std::vector<double>> polys;
};

inline SturmChain sturm_chain(std::vector<double> p) {
  SturmChain ch;
  detail::normalize_poly(p);
  ch.polys.push_back(p);
  std::vector<double> d = detail::poly_derivative(p);
  detail::normalize_poly(d);
  ch.polys.push_back(d);
  while (ch.polys.back().size() > 1) {
    std::vector<double> r = detail::poly_remainder(
        ch.polys[ch.polys.size() - 2], ch.polys.back());
    for (double& v : r) v = -v;
    detail::normalize_poly(r);
    if (r.empty()) break;
    ch.polys.push_back(std::move(r));
  }
  return ch;
}

inline int sign_changes(const SturmChain& ch, double x) {
  int changes = 0;
  double prev = 0.0;
  for (const auto& p : ch.polys) {
    const double v = detail::horner(p, x);
    if (v == 0.0) continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++changes;
    prev = v;
  }
  return changes;
}

// All m eigenvalues, ascending.
inline std::vector<double> sturm_eigenvalues(const Matrix& a) {
  const int m = a.rows();
  const SturmChain ch = sturm_chain(characteristic_polynomial(a));

  double radius = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = 0.0;
    for (int j = 0; j < m; ++j) r += std::abs(a(i, j));
    radius = std::max(radius, r);
  }
  const double lo = -radius - 1.0;
  const double hi = radius + 1.0;
  const int v_lo = sign_changes(ch, lo);
  const double width_tol = 1e-13 * std::max(1.0, radius);

  std::vector<double> out;
  out.reserve(m);
  for (int k = 1; k <= m; ++k) {
    double a0 = lo;
    double b0 = hi;
    for (int it = 0; it < 200 && b0 - a0 > width_tol; ++it) {
      const double mid = 0.5 * (a0 + b0);
      const int roots_leq = v_lo - sign_changes(ch, mid);
      if (roots_leq >= k) {
        b0 = mid;
      } else {
        a0 = mid;
      }
    }
    out.push_back(0.5 * (a0 + b0));
  }
  return out;
}

}  // namespace moran::testing
