#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rvmono {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

/// Maximum-weight (not necessarily maximum-cardinality) matching in a general
/// undirected graph, via Edmonds' blossom algorithm with the O(n^3) primal-dual
/// bookkeeping of Galil. Weights are integers; duals stay integral.
/// Returns mate[v] (or -1) for v in [0, vertex_count).
std::vector<int> max_weight_matching(int vertex_count, std::span<const WeightedEdge> edges);

/// Maximum bipartite matching (Hopcroft-Karp). adjacency[l] lists right
/// vertices in [0, right_count). Returns match_of_left[l] (or -1).
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adjacency, int right_count);

/// Minimum vertex cover of a bipartite graph from a maximum matching (König).
struct BipartiteCover {
  std::vector<int> left;
  std::vector<int> right;
  std::size_t size() const { return left.size() + right.size(); }
};
BipartiteCover konig_cover(const std::vector<std::vector<int>>& adjacency, int right_count,
                           const std::vector<int>& match_of_left);

}  // namespace rvmono
