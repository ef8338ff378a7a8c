#pragma once

#include <vector>

#include "rvmono/poset.hpp"

namespace rvmono {

/// H(S,T): union of all directed paths from a vertex of S to a vertex of T.
/// Only the vertex set is stored; the edge set is every domain edge with
/// both endpoints inside (sweeping graphs are induced).
class SweepingGraph {
 public:
  SweepingGraph(VertexSet vertices, VertexSet sources, VertexSet sinks)
      : vertices_(std::move(vertices)), sources_(std::move(sources)), sinks_(std::move(sinks)) {}

  const VertexSet& vertices() const noexcept { return vertices_; }
  const VertexSet& sources() const noexcept { return sources_; }
  const VertexSet& sinks() const noexcept { return sinks_; }

  bool contains(Vertex z) const { return z < vertices_.size() && vertices_.test(z); }
  bool empty() const { return vertices_.none(); }
  std::size_t vertex_count() const { return vertices_.count(); }

  bool contains_edge(Edge e) const { return contains(e.lower) && contains(e.upper); }
  std::vector<Edge> edges(const Poset& domain) const;

 private:
  VertexSet vertices_;
  VertexSet sources_;
  VertexSet sinks_;
};

/// Throws Error{overlapping_sets} if S and T intersect.
SweepingGraph sweeping_graph(const Poset& domain, const VertexSet& sources, const VertexSet& sinks);
SweepingGraph sweeping_graph(const Poset& domain, const std::vector<Vertex>& sources,
                             const std::vector<Vertex>& sinks);

enum class Position { inside, above, below, neither };
const char* to_string(Position p);

Position position_relative_to(const Poset& domain, Vertex z, const SweepingGraph& h);

/// {z ∉ V(H) : ∃ x ∈ V(H), x ≺ z}, i.e. the vertices strictly above H.
VertexSet vertices_above(const Poset& domain, const SweepingGraph& h);
/// {z ∉ V(H) : ∃ y ∈ V(H), z ≺ y}.
VertexSet vertices_below(const Poset& domain, const SweepingGraph& h);

VertexSet make_set(const Poset& domain, const std::vector<Vertex>& members);
std::vector<Vertex> members(const VertexSet& s);

}  // namespace rvmono
