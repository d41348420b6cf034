#pragma once

#include <stdexcept>
#include <string>

namespace moran {

enum class errc {
  non_square,
  negative_weight,
  nonzero_diagonal,
  all_zero_weights,
  too_small,
  q_out_of_range,
  a_out_of_range,
  parse_error,
  io_error,
  dimension_mismatch,
  no_convergence,
  constant_observations,
  zero_scale,
  degenerate_bounds,
  too_few_replicates,
  too_large_for_exhaustive,
  no_crossing,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_square: return "non_square";
    case errc::negative_weight: return "negative_weight";
    case errc::nonzero_diagonal: return "nonzero_diagonal";
    case errc::all_zero_weights: return "all_zero_weights";
    case errc::too_small: return "too_small";
    case errc::q_out_of_range: return "q_out_of_range";
    case errc::a_out_of_range: return "a_out_of_range";
    case errc::parse_error: return "parse_error";
    case errc::io_error: return "io_error";
    case errc::dimension_mismatch: return "dimension_mismatch";
    case errc::no_convergence: return "no_convergence";
    case errc::constant_observations: return "constant_observations";
    case errc::zero_scale: return "zero_scale";
    case errc::degenerate_bounds: return "degenerate_bounds";
    case errc::too_few_replicates: return "too_few_replicates";
    case errc::too_large_for_exhaustive: return "too_large_for_exhaustive";
    case errc::no_crossing: return "no_crossing";
  }
  return "unknown";
}

// The library's single exception type: a machine-readable code plus a
// human-readable message.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
  throw error(code, msg);
}

}  // namespace moran
