#pragma once

#include <stdexcept>
#include <string>

namespace floq {

enum class errc {
  non_square,
  dimension_too_large,
  length_mismatch,
  split_mismatch,
  missing_assignment,
  m_too_small,
  period_too_small,
  exact_mode_needs_k_zero,
  k_out_of_range,
  axis_too_large,
  lattice_mismatch,
  search_space_too_large,
  bad_argument,
};

// Single exception type for all contract violations; the CLI maps these to
// exit code 2 (usage error).
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace floq
