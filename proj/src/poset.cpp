#include "rvmono/poset.hpp"

#include <deque>
#include <string>

namespace rvmono {

Poset Poset::hypercube(int d) {
  if (d < 1 || d > kMaxDimension)
    throw Error(ErrorCode::invalid_argument,
                "hypercube dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  Poset p;
  p.kind_ = Kind::hypercube;
  p.dim_ = d;
  p.n_ = std::size_t{1} << d;
  return p;
}

Poset Poset::dag(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "DAG must have at least one vertex");
  Poset p;
  p.kind_ = Kind::dag;
  p.n_ = n;
  p.succ_.assign(n, {});
  p.pred_.assign(n, {});
  for (const Edge& e : edges) {
    if (e.lower >= n || e.upper >= n)
      throw Error(ErrorCode::vertex_out_of_range,
                  "edge (" + std::to_string(e.lower) + "," + std::to_string(e.upper) +
                      ") references a vertex outside 0.." + std::to_string(n - 1));
    if (e.lower == e.upper)
      throw Error(ErrorCode::cycle_detected, "self-loop at " + std::to_string(e.lower));
    p.succ_[e.lower].push_back(e.upper);
    p.pred_[e.upper].push_back(e.lower);
    p.dag_edges_.push_back(e);
  }

  // Kahn's algorithm; leftover vertices lie on a cycle.
  std::vector<std::size_t> indeg(n);
  for (const Edge& e : edges) ++indeg[e.upper];
  std::deque<Vertex> ready;
  for (Vertex v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    const Vertex v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (Vertex w : p.succ_[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  if (order.size() != n) throw Error(ErrorCode::cycle_detected, "edge list contains a directed cycle");

  p.topo_ = order;
  p.reach_.assign(n, VertexSet(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexSet& r = p.reach_[*it];
    r.set(*it);
    for (Vertex w : p.succ_[*it]) r |= p.reach_[w];
  }
  return p;
}

std::size_t Poset::edge_count() const noexcept {
  if (is_hypercube()) return static_cast<std::size_t>(dim_) * (n_ / 2);
  return dag_edges_.size();
}

std::vector<Edge> Poset::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for_each_edge([&](Edge e) { out.push_back(e); });
  return out;
}

std::vector<Vertex> Poset::topological_order() const {
  if (!is_hypercube()) return topo_;
  std::vector<Vertex> out(n_);
  for (Vertex x = 0; x < n_; ++x) out[x] = x;
  return out;
}

void Poset::check_vertex(Vertex x) const {
  if (x >= n_)
    throw Error(ErrorCode::vertex_out_of_range,
                "vertex " + std::to_string(x) + " outside 0.." + std::to_string(n_ - 1));
}

bool Poset::reaches(Vertex x, Vertex y) const {
  check_vertex(x);
  check_vertex(y);
  if (is_hypercube()) return (x & y) == x;
  return reach_[x].test(y);
}

VertexSet Poset::up_closure(const VertexSet& seeds) const {
  VertexSet out = seeds;
  if (is_hypercube()) {
    // Vertices in increasing id order visit every predecessor first.
    for (Vertex x = 0; x < n_; ++x) {
      if (out.test(x)) continue;
      for (int i = 0; i < dim_; ++i)
        if ((x >> i & 1U) && out.test(x & ~(Vertex{1} << i))) {
          out.set(x);
          break;
        }
    }
    return out;
  }
  for (auto s = seeds.find_first(); s != VertexSet::npos; s = seeds.find_next(s)) out |= reach_[s];
  return out;
}

VertexSet Poset::down_closure(const VertexSet& seeds) const {
  VertexSet out = seeds;
  if (is_hypercube()) {
    for (Vertex x = static_cast<Vertex>(n_); x-- > 0;) {
      if (out.test(x)) continue;
      for (int i = 0; i < dim_; ++i)
        if (!(x >> i & 1U) && out.test(x | (Vertex{1} << i))) {
          out.set(x);
          break;
        }
    }
    return out;
  }
  for (Vertex z = 0; z < n_; ++z)
    if (!out.test(z) && reach_[z].intersects(seeds)) out.set(z);
  return out;
}

std::vector<Edge> Poset::transitive_closure(int cap_dimension) const {
  if (is_hypercube() && dim_ > cap_dimension)
    throw Error(ErrorCode::size_cap_exceeded,
                "transitive closure of hypercube(" + std::to_string(dim_) +
                    ") exceeds the materialization cap d <= " + std::to_string(cap_dimension));
  std::vector<Edge> out;
  for_each_strict_pair([&](Edge e) { out.push_back(e); });
  return out;
}

}  // namespace rvmono
