#pragma once

#include <stdexcept>
#include <string>

namespace rvmono {

enum class ErrorCode {
  cycle_detected,
  vertex_out_of_range,
  invalid_argument,
  size_cap_exceeded,
  overlapping_sets,
  malformed_file,
  length_mismatch,
  invalid_coloring,
  invalid_spec,
  inconsistent_partition,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rvmono
