#include "rvmono/sweeping.hpp"

namespace rvmono {

std::vector<Edge> SweepingGraph::edges(const Poset& domain) const {
  std::vector<Edge> out;
  for (auto x = vertices_.find_first(); x != VertexSet::npos; x = vertices_.find_next(x))
    domain.for_each_successor(static_cast<Vertex>(x), [&](Vertex y) {
      if (vertices_.test(y)) out.push_back(Edge{static_cast<Vertex>(x), y});
    });
  return out;
}

VertexSet make_set(const Poset& domain, const std::vector<Vertex>& ms) {
  VertexSet s = domain.empty_set();
  for (Vertex v : ms) {
    domain.check_vertex(v);
    s.set(v);
  }
  return s;
}

std::vector<Vertex> members(const VertexSet& s) {
  std::vector<Vertex> out;
  out.reserve(s.count());
  for (auto x = s.find_first(); x != VertexSet::npos; x = s.find_next(x))
    out.push_back(static_cast<Vertex>(x));
  return out;
}

SweepingGraph sweeping_graph(const Poset& domain, const VertexSet& sources, const VertexSet& sinks) {
  if (sources.size() != domain.size() || sinks.size() != domain.size())
    throw Error(ErrorCode::invalid_argument, "vertex set size does not match domain");
  if (sources.intersects(sinks))
    throw Error(ErrorCode::overlapping_sets, "source and sink sets of a sweeping graph overlap");
  VertexSet vs = domain.up_closure(sources) & domain.down_closure(sinks);
  return SweepingGraph(std::move(vs), sources, sinks);
}

SweepingGraph sweeping_graph(const Poset& domain, const std::vector<Vertex>& sources,
                             const std::vector<Vertex>& sinks) {
  return sweeping_graph(domain, make_set(domain, sources), make_set(domain, sinks));
}

const char* to_string(Position p) {
  switch (p) {
    case Position::inside: return "inside";
    case Position::above: return "above";
    case Position::below: return "below";
    case Position::neither: return "neither";
  }
  return "?";
}

VertexSet vertices_above(const Poset& domain, const SweepingGraph& h) {
  VertexSet up = domain.up_closure(h.vertices());
  up -= h.vertices();
  return up;
}

VertexSet vertices_below(const Poset& domain, const SweepingGraph& h) {
  VertexSet down = domain.down_closure(h.vertices());
  down -= h.vertices();
  return down;
}

Position position_relative_to(const Poset& domain, Vertex z, const SweepingGraph& h) {
  domain.check_vertex(z);
  if (h.contains(z)) return Position::inside;
  const VertexSet& vs = h.vertices();
  for (auto v = vs.find_first(); v != VertexSet::npos; v = vs.find_next(v)) {
    if (domain.reaches(static_cast<Vertex>(v), z)) return Position::above;
    if (domain.reaches(z, static_cast<Vertex>(v))) return Position::below;
  }
  return Position::neither;
}

}  // namespace rvmono
