#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "rvmono/error.hpp"

namespace rvmono {

using Vertex = std::uint32_t;
using VertexSet = boost::dynamic_bitset<std::uint64_t>;

/// A cover edge (or, in closures, a strict-order pair) directed lower -> upper.
struct Edge {
  Vertex lower = 0;
  Vertex upper = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite poset given either as the directed hypercube {0,1}^d or as an
/// explicit DAG. Coordinate i (1-based) of a hypercube vertex is bit i-1 of
/// its id. Immutable after construction.
class Poset {
 public:
  enum class Kind { hypercube, dag };

  static constexpr int kMaxDimension = 30;
  static constexpr int kDefaultClosureCap = 12;

  static Poset hypercube(int d);
  /// Throws Error{cycle_detected} or Error{vertex_out_of_range}.
  static Poset dag(std::size_t n, std::span<const Edge> edges);

  Kind kind() const noexcept { return kind_; }
  bool is_hypercube() const noexcept { return kind_ == Kind::hypercube; }
  /// Hypercube dimension; 0 for DAG domains.
  int dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept;

  std::vector<Edge> edges() const;

  template <typename F>
  void for_each_edge(F&& fn) const {
    if (is_hypercube()) {
      for (Vertex x = 0; x < n_; ++x)
        for (int i = 0; i < dim_; ++i)
          if (!(x >> i & 1U)) fn(Edge{x, x | (Vertex{1} << i)});
    } else {
      for (const Edge& e : dag_edges_) fn(e);
    }
  }

  template <typename F>
  void for_each_successor(Vertex x, F&& fn) const {
    if (is_hypercube()) {
      for (int i = 0; i < dim_; ++i)
        if (!(x >> i & 1U)) fn(x | (Vertex{1} << i));
    } else {
      for (Vertex y : succ_[x]) fn(y);
    }
  }

  template <typename F>
  void for_each_predecessor(Vertex x, F&& fn) const {
    if (is_hypercube()) {
      for (int i = 0; i < dim_; ++i)
        if (x >> i & 1U) fn(x & ~(Vertex{1} << i));
    } else {
      for (Vertex y : pred_[x]) fn(y);
    }
  }

  /// Enumerates every strict-order pair x < y, i.e. the edges of TC(G).
  template <typename F>
  void for_each_strict_pair(F&& fn) const {
    if (is_hypercube()) {
      const Vertex full = static_cast<Vertex>(n_ - 1);
      for (Vertex x = 0; x < n_; ++x) {
        const Vertex free = full & ~x;
        for (Vertex sub = free; sub != 0; sub = (sub - 1) & free) fn(Edge{x, x | sub});
      }
    } else {
      for (Vertex x = 0; x < n_; ++x)
        for (auto y = reach_[x].find_first(); y != VertexSet::npos; y = reach_[x].find_next(y))
          if (y != x) fn(Edge{x, static_cast<Vertex>(y)});
    }
  }

  void check_vertex(Vertex x) const;

  /// x ⪯ y (reflexive).
  bool reaches(Vertex x, Vertex y) const;
  /// x ≺ y (strict).
  bool precedes(Vertex x, Vertex y) const { return x != y && reaches(x, y); }

  /// Every cover edge goes from an earlier to a later vertex in this order.
  std::vector<Vertex> topological_order() const;

  VertexSet empty_set() const { return VertexSet(n_); }
  /// {z : ∃ s ∈ seeds, s ⪯ z}.
  VertexSet up_closure(const VertexSet& seeds) const;
  /// {z : ∃ t ∈ seeds, z ⪯ t}.
  VertexSet down_closure(const VertexSet& seeds) const;

  /// Materialized strict-order pairs. Hypercubes above `cap_dimension`
  /// throw Error{size_cap_exceeded} (the closure has 3^d - 2^d pairs).
  std::vector<Edge> transitive_closure(int cap_dimension = kDefaultClosureCap) const;

 private:
  Poset() = default;

  Kind kind_ = Kind::hypercube;
  int dim_ = 0;
  std::size_t n_ = 0;
  std::vector<Edge> dag_edges_;
  std::vector<std::vector<Vertex>> succ_;
  std::vector<std::vector<Vertex>> pred_;
  std::vector<VertexSet> reach_;  // reflexive descendants, DAG only
  std::vector<Vertex> topo_;
};

inline int popcount(Vertex x) noexcept { return __builtin_popcount(x); }

}  // namespace rvmono
