#pragma once

#include <vector>

#include "rvmono/decomposition.hpp"
#include "rvmono/dist_approx.hpp"

namespace rvmono {

/// d an odd perfect square, r | 2√d + 1, distinguished coordinate i ∈ [1, d].
struct LowerBoundSpec {
  int d = 9;
  int r = 7;
  int i = 1;

  /// Throws Error{invalid_spec}.
  void validate() const;
  int root() const;
  int width() const;  // w = (2√d + 1) / r
};

/// Block index j ∈ [1, r] of the middle level ℓ = |x_{-i}| - ((d-1)/2 - √d) ∈ [0, 2√d],
/// with blocks [(j-1)w, jw) of exactly w levels.
int block_index(const LowerBoundSpec& spec, int level);

/// Value at a single vertex:
///   r + 1        above the middle levels,
///   1            below them,
///   j + 1 - x_i  in block j.
double lower_bound_value(const LowerBoundSpec& spec, Vertex x);

ValuedFunction lower_bound_function(const LowerBoundSpec& spec);

/// Coordinate-i edges whose x_{-i} lies in the middle levels.
Matching witness_matching(const LowerBoundSpec& spec);

/// Union over pairs of the first min(c, #diff) differing coordinates (1-based, ascending).
CoordinateSet cap_set(const std::vector<Vertex>& q, int c, int d);

/// Number of i ∈ [1, d] for which some x ≺ y in Q has f_i(x) > f_i(y).
/// Only d and r are read from `spec`.
int violation_witness_count(const std::vector<Vertex>& q, const LowerBoundSpec& spec);

/// Distinct coordinates i for which Q contains a violation of f_i.
std::vector<int> violated_family_members(const std::vector<Vertex>& q, const LowerBoundSpec& spec);

}  // namespace rvmono
