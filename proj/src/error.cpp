#include "rvmono/error.hpp"

namespace rvmono {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::cycle_detected: return "cycle-detected";
    case ErrorCode::vertex_out_of_range: return "vertex-out-of-range";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::size_cap_exceeded: return "size-cap-exceeded";
    case ErrorCode::overlapping_sets: return "overlapping-sets";
    case ErrorCode::malformed_file: return "malformed";
    case ErrorCode::length_mismatch: return "length-mismatch";
    case ErrorCode::invalid_coloring: return "invalid-coloring";
    case ErrorCode::invalid_spec: return "invalid-spec";
    case ErrorCode::inconsistent_partition: return "inconsistent-partition";
  }
  return "unknown";
}

}  // namespace rvmono
