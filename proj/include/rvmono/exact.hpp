#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvmono/isoperimetry.hpp"

namespace rvmono {

/// No cover edge is violated.
bool is_monotone(const ValuedFunction& f);

/// Minimum vertex cover of the violation graph over TC(G), and a monotone
/// function that differs from f exactly on it.
struct DistanceCertificate {
  Rational epsilon;
  std::vector<Vertex> cover;  // ascending
  ValuedFunction repaired;
};

enum class CoverMethod {
  automatic,  // bipartite for Boolean f, chain decomposition otherwise
  bipartite,  // König on the (1-valued, 0-valued) violation graph; Boolean f only
  chains,     // König on the split graph of the violation order
};

struct ExactLimits {
  std::size_t general_cap = 256;
  std::size_t boolean_cap = 1024;
};

/// Throws Error{size_cap_exceeded} above the limits, Error{invalid_argument}
/// when the bipartite method is forced on a non-Boolean f.
DistanceCertificate exact_distance(const ValuedFunction& f, CoverMethod method = CoverMethod::automatic,
                                   const ExactLimits& limits = {});

/// Convenience: exact ε(f) only.
Rational exact_epsilon(const ValuedFunction& f, const ExactLimits& limits = {});

/// g(z) = max f over kept x ⪯ z, with the minimum kept value for z below every kept point.
ValuedFunction repair(const ValuedFunction& f, const std::vector<Vertex>& cover);

struct CertificateCheck {
  bool repaired_monotone = false;
  std::size_t hamming = 0;
  bool hamming_matches = false;
  bool cover_is_cover = false;
  std::optional<Edge> uncovered;
  bool ok() const { return repaired_monotone && hamming_matches && cover_is_cover; }
};
CertificateCheck check_certificate(const ValuedFunction& f, const DistanceCertificate& cert);

nlohmann::ordered_json certificate_to_json(const DistanceCertificate& cert);

/// Maximum and greedy-maximal matching sizes in the violation graph over TC(G).
struct ViolationMatchingSizes {
  std::size_t maximum = 0;
  std::size_t greedy_maximal = 0;
};
ViolationMatchingSizes violation_matching_sizes(const ValuedFunction& f, const ExactLimits& limits = {});

/// Optimum over every matching of violated TC pairs: maximum Σ (f(s) - f(t)),
/// then the fewest pairs among maximizers. Exhaustive over vertex subsets; N <= 16.
struct MatchingOptimum {
  double max_weight = 0.0;
  std::size_t min_cardinality = 0;
};
MatchingOptimum enumerate_matchings_check(const ValuedFunction& f);

enum class ColoringSearch { exhaustive, greedy };

struct ColoringResult {
  EdgeColoring coloring;
  double objective = 0.0;
};

struct ColoringSearchOptions {
  std::size_t exhaustive_cap = 20;
  int restarts = 8;
  std::uint64_t seed = 0;
};

/// Coloring of S_f^- minimizing robust_objective. Exhaustive mode throws
/// Error{size_cap_exceeded} above `exhaustive_cap` violated edges.
ColoringResult worst_coloring(const ValuedFunction& f, ColoringSearch mode,
                              const ColoringSearchOptions& opts = {});

/// Median threshold m of f and the Boolean h derived from it.
struct MedianThreshold {
  double m = 0.0;
  int which = 1;  // 1: h = [f > m], 2: h = [f >= m]
  ValuedFunction h;
};
MedianThreshold median_threshold(const ValuedFunction& f);

}  // namespace rvmono
