#include "weights.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace moran {

namespace {

void check_order(int n) {
  if (n < 3) {
    fail(errc::too_small,
         "weights matrix needs n >= 3, got n = " + std::to_string(n));
  }
}

// Splits a CSV line into trimmed fields; returns false on an empty line.
bool split_fields(const std::string& line, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto from = field.find_first_not_of(" \t\r");
    if (from == std::string::npos) {
      out.emplace_back();
    } else {
      const auto to = field.find_last_not_of(" \t\r");
      out.emplace_back(field.substr(from, to - from + 1));
    }
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return !out.empty() && !(out.size() == 1 && out[0].empty());
}

bool parse_double(const std::string& s, double& value) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, value);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

WeightsMatrix WeightsMatrix::from_dense(const Matrix& raw) {
  if (!raw.square()) {
    fail(errc::non_square, "weights matrix must be square, got " +
                               std::to_string(raw.rows()) + "x" +
                               std::to_string(raw.cols()));
  }
  const int n = raw.rows();
  check_order(n);
  for (int i = 0; i < n; ++i) {
    if (raw(i, i) != 0.0) {
      fail(errc::nonzero_diagonal,
           "diagonal entry (" + std::to_string(i) + "," + std::to_string(i) +
               ") must be zero, got " + std::to_string(raw(i, i)));
    }
    for (int j = 0; j < n; ++j) {
      const double v = raw(i, j);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        fail(errc::negative_weight,
             "weight (" + std::to_string(i) + "," + std::to_string(j) +
                 ") must be a nonnegative finite number, got " +
                 std::to_string(v));
      }
    }
  }
  Matrix w = symmetrized(raw);
  double w_sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w_sum += w(i, j);
  if (!(w_sum > 0.0)) {
    fail(errc::all_zero_weights, "weights matrix has no positive entries");
  }
  return WeightsMatrix(std::move(w), w_sum);
}

WeightsMatrix WeightsMatrix::line_decay(int n, int q) {
  check_order(n);
  if (q < 1 || q > n - 1) {
    fail(errc::q_out_of_range, "q must satisfy 1 <= q <= n-1, got q = " +
                                   std::to_string(q) + " with n = " +
                                   std::to_string(n));
  }
  Matrix w(n, n);
  double w_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = i > j ? i - j : j - i;
      if (d >= 1 && d <= q) {
        w(i, j) = std::ldexp(1.0, 1 - d);  // 2^(1-d), exact
        w_sum += w(i, j);
      }
    }
  }
  return WeightsMatrix(std::move(w), w_sum);
}

WeightsMatrix WeightsMatrix::complete(int n) {
  check_order(n);
  Matrix w(n, n, 1.0);
  for (int i = 0; i < n; ++i) w(i, i) = 0.0;
  return WeightsMatrix(std::move(w), static_cast<double>(n) * (n - 1));
}

WeightsMatrix WeightsMatrix::random_uniform(int n, double a,
                                            std::uint64_t seed) {
  check_order(n);
  if (!(a > 0.0 && a < 1.0)) {
    fail(errc::a_out_of_range,
         "a must lie in (0, 1), got a = " + std::to_string(a));
  }
  Splitmix64 rng(substream(seed, stream::weights, 0));
  Matrix raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      raw(i, j) = rng.uniform(1.0 - a, 1.0 + a);
    }
  }
  return from_dense(raw);
}

WeightsMatrix WeightsMatrix::read_csv(const std::string& path,
                                      bool has_header) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, path + ": cannot open for reading");

  std::vector<std::vector<double>> rows;
  std::vector<std::string> fields;
  std::string line;
  int lineno = 0;
  bool skipped_header = !has_header;
  while (std::getline(in, line)) {
    ++lineno;
    if (!split_fields(line, fields)) continue;  // blank line
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        fail(errc::parse_error, path + ":" + std::to_string(lineno) +
                                    ": cannot parse '" + f + "' as a number");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(errc::parse_error,
           path + ":" + std::to_string(lineno) + ": expected " +
               std::to_string(rows.front().size()) + " fields, got " +
               std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(errc::parse_error, path + ": no data rows");
  if (rows.size() != rows.front().size()) {
    fail(errc::non_square, path + ": matrix is " + std::to_string(rows.size()) +
                               "x" + std::to_string(rows.front().size()) +
                               ", expected square");
  }
  const int n = static_cast<int>(rows.size());
  Matrix raw(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw(i, j) = rows[i][j];
  return from_dense(raw);
}

void WeightsMatrix::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, path + ": cannot open for writing");
  char buf[40];
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", w_(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) fail(errc::io_error, path + ": write failed");
}

}  // namespace moran
