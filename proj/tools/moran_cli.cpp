// Command-line front end for the moran library. Talks to libmoran through
// the public C API only.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <charconv>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moran.h"

namespace {

enum class Format { text, csv, json };

struct WeightsDeleter {
  void operator()(moran_weights* w) const { moran_weights_free(w); }
};
using WeightsHandle = std::unique_ptr<moran_weights, WeightsDeleter>;

// Validation and parse failures exit 2; numerical failures exit 1.
[[noreturn]] void die(moran_status status) {
  std::fprintf(stderr, "error: %s\n", moran_last_error());
  std::exit(status == MORAN_ERR_NO_CONVERGENCE ? 1 : 2);
}

[[noreturn]] void die_msg(const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(2);
}

void check(moran_status status) {
  if (status != MORAN_OK) die(status);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool parse_double(const std::string& s, double& v) {
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(s.data(), last, v);
  return res.ec == std::errc() && res.ptr == last;
}

std::string trimmed(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

// Observations: one value per line; a non-numeric first line is a header.
std::vector<double> read_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) die_msg(path + ": cannot open for reading");
  std::vector<double> y;
  std::string line;
  int lineno = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string tok = trimmed(line);
    if (tok.empty()) continue;
    double v;
    if (!parse_double(tok, v)) {
      if (first_data) {  // header row
        first_data = false;
        continue;
      }
      die_msg(path + ":" + std::to_string(lineno) + ": cannot parse '" + tok +
              "' as a number");
    }
    first_data = false;
    y.push_back(v);
  }
  if (y.empty()) die_msg(path + ": no observations");
  return y;
}

struct WeightsSpec {
  std::string csv_path;
  bool csv_header = false;
  std::string line_arg;     // "n,q"
  std::string uniform_arg;  // "n,a"
  int complete_n = 0;

  void add_options(CLI::App* cmd) {
    auto* grp = cmd->add_option_group("weights", "spatial weights source");
    grp->add_option("--w", csv_path, "dense weights matrix CSV");
    grp->add_option("--w-line", line_arg,
                    "line-decay weights, two values: n,q");
    grp->add_option("--w-complete", complete_n,
                    "complete-graph weights of order n");
    grp->add_option("--w-uniform", uniform_arg,
                    "random uniform weights, two values: n,a (uses --seed)");
    grp->require_option(1);
    cmd->add_flag("--w-header", csv_header,
                  "treat the first row of --w as a header");
  }

  WeightsHandle build(std::uint64_t seed) const {
    moran_weights* w = nullptr;
    if (!csv_path.empty()) {
      check(moran_weights_read_csv(csv_path.c_str(), csv_header ? 1 : 0, &w));
    } else if (!line_arg.empty()) {
      int n = 0, q = 0;
      if (std::sscanf(line_arg.c_str(), "%d,%d", &n, &q) != 2)
        die_msg("--w-line expects n,q (e.g. --w-line 10,1)");
      check(moran_weights_line_decay(n, q, &w));
    } else if (!uniform_arg.empty()) {
      int n = 0;
      double a = 0.0;
      if (std::sscanf(uniform_arg.c_str(), "%d,%lf", &n, &a) != 2)
        die_msg("--w-uniform expects n,a (e.g. --w-uniform 25,0.05)");
      check(moran_weights_random_uniform(n, a, seed, &w));
    } else {
      check(moran_weights_complete(complete_n, &w));
    }
    return WeightsHandle(w);
  }
};

void print_kv(const char* key, const std::string& value) {
  std::printf("%-12s %s\n", key, value.c_str());
}

void run_moran(const WeightsHandle& w, const std::vector<double>& y,
               Format format) {
  moran_result r;
  check(moran_analyze(w.get(), y.data(), static_cast<int32_t>(y.size()), &r));
  switch (format) {
    case Format::text:
      print_kv("n", std::to_string(r.n));
      print_kv("i", fmt(r.i));
      print_kv("i_m", fmt(r.i_m));
      print_kv("lambda_min", fmt(r.lambda_min));
      print_kv("lambda_max", fmt(r.lambda_max));
      break;
    case Format::csv:
      std::printf("i,i_m,lambda_min,lambda_max,n\n%s,%s,%s,%s,%d\n",
                  fmt(r.i).c_str(), fmt(r.i_m).c_str(),
                  fmt(r.lambda_min).c_str(), fmt(r.lambda_max).c_str(), r.n);
      break;
    case Format::json:
      std::printf(
          "{\"i\":%s,\"i_m\":%s,\"lambda_min\":%s,\"lambda_max\":%s,\"n\":%d}\n",
          fmt(r.i).c_str(), fmt(r.i_m).c_str(), fmt(r.lambda_min).c_str(),
          fmt(r.lambda_max).c_str(), r.n);
      break;
  }
}

void run_bounds(const WeightsHandle& w, Format format) {
  double lo = 0.0, hi = 0.0;
  check(moran_bounds(w.get(), &lo, &hi));
  const int n = moran_weights_order(w.get());
  switch (format) {
    case Format::text:
      print_kv("n", std::to_string(n));
      print_kv("lambda_min", fmt(lo));
      print_kv("lambda_max", fmt(hi));
      break;
    case Format::csv:
      std::printf("lambda_min,lambda_max,n\n%s,%s,%d\n", fmt(lo).c_str(),
                  fmt(hi).c_str(), n);
      break;
    case Format::json:
      std::printf("{\"lambda_min\":%s,\"lambda_max\":%s,\"n\":%d}\n",
                  fmt(lo).c_str(), fmt(hi).c_str(), n);
      break;
  }
}

void run_extremal(const WeightsHandle& w, const std::string& which,
                  double shift, double scale, Format format) {
  const int n = moran_weights_order(w.get());
  std::vector<double> y(static_cast<std::size_t>(n));
  const moran_extremum ex = which == "lower" ? MORAN_LOWER : MORAN_UPPER;
  check(moran_extremal_observations(w.get(), ex, shift, scale, y.data()));
  if (format == Format::json) {
    std::string out = "{\"n\":" + std::to_string(n) + ",\"which\":\"" + which +
                      "\",\"y\":[";
    for (int i = 0; i < n; ++i) {
      if (i) out += ',';
      out += fmt(y[i]);
    }
    out += "]}";
    std::printf("%s\n", out.c_str());
  } else {
    // One value per line; feeds straight back in as an observations file.
    for (double v : y) std::printf("%s\n", fmt(v).c_str());
  }
}

void run_permtest(const WeightsHandle& w, const std::vector<double>& y,
                  int reps, std::uint64_t seed, const std::string& alt,
                  Format format) {
  moran_tail tail = MORAN_TAIL_GREATER;
  if (alt == "less") tail = MORAN_TAIL_LESS;
  if (alt == "two_sided") tail = MORAN_TAIL_TWO_SIDED;
  moran_permtest_result r;
  check(moran_permutation_test(w.get(), y.data(),
                               static_cast<int32_t>(y.size()), reps, seed,
                               tail, &r));
  const int n = static_cast<int>(y.size());
  switch (format) {
    case Format::text:
      print_kv("n", std::to_string(n));
      print_kv("i", fmt(r.observed_i));
      print_kv("i_m", fmt(r.observed_i_m));
      print_kv("p_value", fmt(r.p_value));
      print_kv("null_mean", fmt(r.null_mean));
      print_kv("replicates", std::to_string(r.replicates));
      print_kv("seed", std::to_string(r.seed));
      print_kv("alternative", alt);
      break;
    case Format::csv:
      std::printf("i,i_m,p_value,null_mean,replicates,seed,alternative,n\n");
      std::printf("%s,%s,%s,%s,%d,%" PRIu64 ",%s,%d\n", fmt(r.observed_i).c_str(),
                  fmt(r.observed_i_m).c_str(), fmt(r.p_value).c_str(),
                  fmt(r.null_mean).c_str(), r.replicates, r.seed, alt.c_str(),
                  n);
      break;
    case Format::json:
      std::printf("{\"i\":%s,\"i_m\":%s,\"n\":%d,\"p_value\":%s,"
                  "\"replicates\":%d,\"seed\":%" PRIu64 "}\n",
                  fmt(r.observed_i).c_str(), fmt(r.observed_i_m).c_str(), n,
                  fmt(r.p_value).c_str(), r.replicates, r.seed);
      break;
  }
}

std::vector<int32_t> parse_int_list(const std::string& arg,
                                    const char* flag_name) {
  std::vector<int32_t> out;
  std::size_t pos = 0;
  while (pos <= arg.size()) {
    const std::size_t comma = arg.find(',', pos);
    const std::string tok =
        arg.substr(pos, comma == std::string::npos ? comma : comma - pos);
    int v = 0;
    if (std::sscanf(tok.c_str(), "%d", &v) != 1)
      die_msg(std::string(flag_name) + ": cannot parse '" + tok + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

void run_table1(const std::string& ns_arg, const std::string& qs_arg,
                Format format) {
  const std::vector<int32_t> ns = parse_int_list(ns_arg, "--n");
  const std::vector<int32_t> qs = parse_int_list(qs_arg, "--q");
  std::vector<double> lower(ns.size() * qs.size());
  std::vector<double> upper(ns.size() * qs.size());
  check(moran_table1(ns.data(), static_cast<int32_t>(ns.size()), qs.data(),
                     static_cast<int32_t>(qs.size()), lower.data(),
                     upper.data()));
  switch (format) {
    case Format::text: {
      std::printf("%-6s", "n\\q");
      for (int32_t q : qs) std::printf("%8d%8s", q, "");
      std::printf("\n%-6s", "");
      for (std::size_t k = 0; k < qs.size(); ++k)
        std::printf("%8s%8s", "lower", "upper");
      std::printf("\n");
      for (std::size_t i = 0; i < ns.size(); ++i) {
        std::printf("%-6d", ns[i]);
        for (std::size_t j = 0; j < qs.size(); ++j) {
          const std::size_t k = i * qs.size() + j;
          std::printf("%8.3f%8.3f", lower[k], upper[k]);
        }
        std::printf("\n");
      }
      break;
    }
    case Format::csv:
      std::printf("n,q,lower,upper\n");
      for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < qs.size(); ++j) {
          const std::size_t k = i * qs.size() + j;
          std::printf("%d,%d,%s,%s\n", ns[i], qs[j], fmt(lower[k]).c_str(),
                      fmt(upper[k]).c_str());
        }
      break;
    case Format::json: {
      std::string out = "{\"rows\":[";
      for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < qs.size(); ++j) {
          const std::size_t k = i * qs.size() + j;
          if (k) out += ',';
          out += "{\"n\":" + std::to_string(ns[i]) +
                 ",\"q\":" + std::to_string(qs[j]) +
                 ",\"lower\":" + fmt(lower[k]) +
                 ",\"upper\":" + fmt(upper[k]) + "}";
        }
      out += "]}";
      std::printf("%s\n", out.c_str());
      break;
    }
  }
}

void run_threshold(int n, int trials, double step, std::uint64_t seed,
                   Format format) {
  const int32_t points = moran_threshold_grid_size(step);
  if (points <= 0) die_msg("--step must lie in (0, 0.05]");
  std::vector<double> a_grid(static_cast<std::size_t>(points));
  std::vector<double> fraction(static_cast<std::size_t>(points));
  double a_star = 0.0;
  check(moran_definiteness_threshold(n, trials, step, seed, &a_star,
                                     a_grid.data(), fraction.data()));
  switch (format) {
    case Format::text:
      print_kv("n", std::to_string(n));
      print_kv("a_star", fmt(a_star));
      print_kv("trials_per_a", std::to_string(trials));
      print_kv("grid_step", fmt(step));
      print_kv("seed", std::to_string(seed));
      std::printf("\n%-22s %s\n", "a", "fraction_negative_definite");
      for (int32_t k = 0; k < points; ++k)
        std::printf("%-22s %s\n", fmt(a_grid[k]).c_str(),
                    fmt(fraction[k]).c_str());
      break;
    case Format::csv:
      std::printf("a,fraction_negative_definite\n");
      for (int32_t k = 0; k < points; ++k)
        std::printf("%s,%s\n", fmt(a_grid[k]).c_str(),
                    fmt(fraction[k]).c_str());
      break;
    case Format::json: {
      std::string out = "{\"n\":" + std::to_string(n) +
                        ",\"a_star\":" + fmt(a_star) +
                        ",\"trials_per_a\":" + std::to_string(trials) +
                        ",\"grid_step\":" + fmt(step) +
                        ",\"seed\":" + std::to_string(seed) + ",\"curve\":[";
      for (int32_t k = 0; k < points; ++k) {
        if (k) out += ',';
        out += "{\"a\":" + fmt(a_grid[k]) +
               ",\"fraction_negative_definite\":" + fmt(fraction[k]) + "}";
      }
      out += "]}";
      std::printf("%s\n", out.c_str());
      break;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moran's I, its exact attainable range, the rescaled "
               "alternative with range [-1,1], and a permutation test of "
               "spatial independence"};
  app.require_subcommand(1);
  app.fallthrough();  // --format/--seed may follow the subcommand

  std::string format_name = "text";
  std::uint64_t seed = 0;
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();

  WeightsSpec w_moran, w_bounds, w_extremal, w_permtest;
  std::string y_path, y_path_pt;
  std::string which = "lower";
  double shift = 0.0, scale = 1.0;
  int reps = 999;
  std::string alt = "greater";
  std::string ns_arg = "10,20,30,40,50";
  std::string qs_arg = "1,2,3";
  int thr_n = 0, thr_trials = 200;
  double thr_step = 0.02;

  CLI::App* cmd_moran = app.add_subcommand(
      "moran", "Moran's I, the rescaled alternative and the exact range");
  cmd_moran->add_option("--y", y_path, "observations CSV, one value per line")
      ->required();
  w_moran.add_options(cmd_moran);

  CLI::App* cmd_bounds = app.add_subcommand(
      "bounds", "exact attainable range of the statistic");
  w_bounds.add_options(cmd_bounds);

  CLI::App* cmd_extremal = app.add_subcommand(
      "extremal", "observations attaining the lower or upper bound");
  cmd_extremal->add_option("--which", which, "which bound to attain")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  cmd_extremal->add_option("--shift", shift, "constant offset c1")
      ->capture_default_str();
  cmd_extremal->add_option("--scale", scale, "nonzero scale c2")
      ->capture_default_str();
  w_extremal.add_options(cmd_extremal);

  CLI::App* cmd_permtest = app.add_subcommand(
      "permtest", "permutation test of spatial independence");
  cmd_permtest
      ->add_option("--y", y_path_pt, "observations CSV, one value per line")
      ->required();
  cmd_permtest->add_option("--reps", reps, "permutation replicates (>= 99)")
      ->capture_default_str();
  cmd_permtest->add_option("--alt", alt, "alternative hypothesis")
      ->check(CLI::IsMember({"greater", "less", "two_sided"}))
      ->capture_default_str();
  w_permtest.add_options(cmd_permtest);

  CLI::App* cmd_table1 = app.add_subcommand(
      "table1", "bounds for line-decay weights over an (n, q) grid");
  cmd_table1->add_option("--n", ns_arg, "comma-separated list of n")
      ->capture_default_str();
  cmd_table1->add_option("--q", qs_arg, "comma-separated list of q")
      ->capture_default_str();

  CLI::App* cmd_threshold = app.add_subcommand(
      "threshold", "negative-definiteness threshold for uniform weights");
  cmd_threshold->add_option("--n", thr_n, "number of spatial units")
      ->required();
  cmd_threshold->add_option("--trials", thr_trials, "trials per grid point")
      ->capture_default_str();
  cmd_threshold->add_option("--step", thr_step, "grid step for a")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Format format = Format::text;
  if (format_name == "csv") format = Format::csv;
  if (format_name == "json") format = Format::json;

  if (cmd_moran->parsed()) {
    run_moran(w_moran.build(seed), read_observations(y_path), format);
  } else if (cmd_bounds->parsed()) {
    run_bounds(w_bounds.build(seed), format);
  } else if (cmd_extremal->parsed()) {
    run_extremal(w_extremal.build(seed), which, shift, scale, format);
  } else if (cmd_permtest->parsed()) {
    run_permtest(w_permtest.build(seed), read_observations(y_path_pt), reps,
                 seed, alt, format);
  } else if (cmd_table1->parsed()) {
    run_table1(ns_arg, qs_arg, format);
  } else if (cmd_threshold->parsed()) {
    run_threshold(thr_n, thr_trials, thr_step, seed, format);
  }
  return 0;
}
