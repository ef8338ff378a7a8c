#include "rvmono/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rvmono/matching.hpp"

namespace rvmono {

std::vector<Vertex> Matching::lower() const {
  std::vector<Vertex> out;
  for (const Edge& e : pairs) out.push_back(e.lower);
  return out;
}

std::vector<Vertex> Matching::upper() const {
  std::vector<Vertex> out;
  for (const Edge& e : pairs) out.push_back(e.upper);
  return out;
}

void validate_matching(const Poset& domain, const Matching& m) {
  std::vector<bool> seen(domain.size(), false);
  for (const Edge& e : m.pairs) {
    domain.check_vertex(e.lower);
    domain.check_vertex(e.upper);
    if (!domain.precedes(e.lower, e.upper))
      throw Error(ErrorCode::invalid_argument, "matching pair (" + std::to_string(e.lower) + "," +
                                                   std::to_string(e.upper) + ") is not comparable");
    for (Vertex v : {e.lower, e.upper}) {
      if (seen[v]) throw Error(ErrorCode::invalid_argument, "vertex " + std::to_string(v) + " matched twice");
      seen[v] = true;
    }
  }
}

Matching max_weight_min_card_matching(const ValuedFunction& f, const MatchingLimits& limits) {
  const std::size_t n = f.size();
  if (n > limits.vertex_cap)
    throw Error(ErrorCode::size_cap_exceeded, "matching solver needs N <= " + std::to_string(limits.vertex_cap));
  const auto rank = rank_values(f);
  const auto scale = static_cast<std::int64_t>(n) + 1;
  std::vector<WeightedEdge> candidates;
  f.domain().for_each_strict_pair([&](Edge e) {
    if (rank[e.lower] > rank[e.upper])
      candidates.push_back({static_cast<int>(e.lower), static_cast<int>(e.upper),
                            scale * (rank[e.lower] - rank[e.upper]) - 1});
  });
  Matching m;
  if (candidates.empty()) return m;
  const auto mate = max_weight_matching(static_cast<int>(n), candidates);
  for (Vertex v = 0; v < n; ++v) {
    const int u = mate[v];
    if (u < 0 || static_cast<Vertex>(u) < v) continue;
    const Vertex a = v, b = static_cast<Vertex>(u);
    m.pairs.push_back(f.domain().precedes(a, b) ? Edge{a, b} : Edge{b, a});
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

double matching_weight(const ValuedFunction& f, const Matching& m) {
  double w = 0;
  for (const Edge& e : m.pairs) w += f(e.lower) - f(e.upper);
  return w;
}

bool conflict(const Poset& domain, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
              const std::vector<Vertex>& x2, const std::vector<Vertex>& y2) {
  const VertexSet sets[4] = {make_set(domain, x), make_set(domain, y), make_set(domain, x2), make_set(domain, y2)};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (sets[a].intersects(sets[b])) throw Error(ErrorCode::overlapping_sets, "conflict needs four disjoint sets");
  const auto h1 = sweeping_graph(domain, sets[0], sets[1]);
  const auto h2 = sweeping_graph(domain, sets[2], sets[3]);
  return h1.vertices().intersects(h2.vertices());
}

namespace {

template <typename T>
std::vector<T> merged(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PairPartition merge_pairs(const Poset& domain, const Matching& m) {
  validate_matching(domain, m);
  PairPartition blocks;
  std::vector<VertexSet> hull;
  for (std::size_t p = 0; p < m.pairs.size(); ++p) {
    blocks.push_back(Block{{m.pairs[p].lower}, {m.pairs[p].upper}, {p}});
    hull.push_back(sweeping_graph(domain, blocks.back().sources, blocks.back().sinks).vertices());
  }
  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    for (std::size_t i = 0; i < blocks.size() && !merged_any; ++i) {
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        if (!hull[i].intersects(hull[j])) continue;
        Block& bi = blocks[i];
        bi.sources = merged(bi.sources, blocks[j].sources);
        bi.sinks = merged(bi.sinks, blocks[j].sinks);
        bi.pairs = merged(bi.pairs, blocks[j].pairs);
        hull[i] = sweeping_graph(domain, bi.sources, bi.sinks).vertices();
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
        hull.erase(hull.begin() + static_cast<std::ptrdiff_t>(j));
        merged_any = true;
        break;
      }
    }
  }
  return blocks;
}

ValuedFunction component_function(const ValuedFunction& f, const SweepingGraph& h) {
  const Poset& dom = f.domain();
  const auto sinks = members(h.sinks());
  const VertexSet above = vertices_above(dom, h);
  std::vector<double> v(f.size(), 0.0);
  for (Vertex z = 0; z < f.size(); ++z) {
    if (h.contains(z)) {
      bool beats_all = true;
      for (Vertex t : sinks)
        if (dom.reaches(z, t) && !(f(z) > f(t))) {
          beats_all = false;
          break;
        }
      v[z] = beats_all ? 1.0 : 0.0;
    } else {
      v[z] = above.test(z) ? 1.0 : 0.0;
    }
  }
  return ValuedFunction(f.domain_ptr(), std::move(v));
}

std::vector<Component> build_components(const ValuedFunction& f, const Matching& m, const PairPartition& blocks) {
  const Poset& dom = f.domain();
  std::vector<bool> seen(m.pairs.size(), false);
  for (const Block& b : blocks) {
    std::vector<Vertex> s, t;
    for (std::size_t p : b.pairs) {
      if (p >= m.pairs.size() || seen[p])
        throw Error(ErrorCode::inconsistent_partition, "block refers to a missing or repeated matching pair");
      seen[p] = true;
      s.push_back(m.pairs[p].lower);
      t.push_back(m.pairs[p].upper);
    }
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    if (s != b.sources || t != b.sinks)
      throw Error(ErrorCode::inconsistent_partition, "block endpoints disagree with its matching pairs");
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw Error(ErrorCode::inconsistent_partition, "partition does not cover the matching");

  std::vector<Component> out;
  out.reserve(blocks.size());
  for (const Block& b : blocks) {
    SweepingGraph h = sweeping_graph(dom, b.sources, b.sinks);
    ValuedFunction fi = component_function(f, h);
    out.push_back(Component{b, std::move(h), std::move(fi)});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string edge_str(Edge e) { return "(" + std::to_string(e.lower) + "," + std::to_string(e.upper) + ")"; }

}  // namespace

DecompositionCertificate verify_decomposition(const ValuedFunction& f, const Decomposition& d,
                                              const ExactLimits& limits) {
  DecompositionCertificate c;
  const Poset& dom = f.domain();
  const std::size_t n = f.size();
  const auto profile = violation_profile(f);
  c.violated_f = profile.violated_edges.size();
  c.monotone_input = profile.violated_edges.empty();
  c.epsilon_f = exact_epsilon(f, limits);
  c.matching_size_bound = Rational(static_cast<std::int64_t>(2 * d.matching.size()), static_cast<std::int64_t>(n)) >= c.epsilon_f;

  auto fail = [&](const std::string& check, const std::string& detail) {
    c.witnesses.push_back(check + ": " + detail);
  };

  // (ii) violated edges of every f_i are violated by f and lie inside H_i.
  c.edges_inside = true;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const auto& comp = d.components[i];
    const auto pi = violation_profile(comp.fi);
    c.violated_i.push_back(pi.violated_edges.size());
    for (const Edge& e : pi.violated_edges) {
      const bool ok = is_violated(f, e) && comp.graph.contains_edge(e);
      if (!ok && c.edges_inside) {
        c.edges_inside = false;
        fail("edges_inside", "component " + std::to_string(i) + " edge " + edge_str(e) +
                                 (is_violated(f, e) ? " leaves H_i" : " is not violated by f"));
      }
    }
  }

  // (iii) disjoint sweeping graphs.
  c.disjoint = true;
  VertexSet used = dom.empty_set();
  for (std::size_t i = 0; i < d.components.size() && c.disjoint; ++i) {
    const VertexSet& vs = d.components[i].graph.vertices();
    if (vs.intersects(used)) {
      c.disjoint = false;
      const VertexSet both = vs & used;
      fail("disjoint", "vertex " + std::to_string(both.find_first()) + " lies in component " + std::to_string(i) +
                           " and an earlier one");
    }
    used |= vs;
  }

  // (iv) M_i is a violation matching of f_i; ε(f_i) follows from it.
  c.matchings_violated = true;
  c.epsilon_sum = 0;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    const auto& comp = d.components[i];
    const Rational ei = exact_epsilon(comp.fi, limits);
    c.epsilon_i.push_back(ei);
    c.epsilon_sum += ei;
    if (!c.matchings_violated) continue;
    for (std::size_t p : comp.block.pairs) {
      const Edge e = d.matching.pairs.at(p);
      if (!dom.precedes(e.lower, e.upper) || !(comp.fi(e.lower) > comp.fi(e.upper))) {
        c.matchings_violated = false;
        fail("matchings_violated", "component " + std::to_string(i) + " pair " + edge_str(e) + " has f_i = (" +
                                       std::to_string(static_cast<int>(comp.fi(e.lower))) + "," +
                                       std::to_string(static_cast<int>(comp.fi(e.upper))) + ")");
        break;
      }
    }
    if (c.matchings_violated && (comp.block.pairs.size() != comp.block.sources.size() ||
                                 ei * static_cast<std::int64_t>(n) < static_cast<std::int64_t>(comp.block.pairs.size()))) {
      c.matchings_violated = false;
      fail("matchings_violated", "component " + std::to_string(i) + " has eps(f_i)*N below |M_i|");
    }
  }

  // (i)
  c.sum_bound = 2 * c.epsilon_sum >= c.epsilon_f;
  if (!c.sum_bound) {
    std::ostringstream os;
    os << "2*" << c.epsilon_sum << " < " << c.epsilon_f;
    fail("sum_bound", os.str());
  }

  // (v)
  c.strict_drop = true;
  for (std::size_t i = 0; i < d.components.size() && c.strict_drop; ++i) {
    const Block& b = d.components[i].block;
    for (Vertex x : b.sources) {
      for (Vertex y : b.sinks)
        if (dom.precedes(x, y) && !(f(x) > f(y))) {
          c.strict_drop = false;
          fail("strict_drop", "component " + std::to_string(i) + " pair " + edge_str(Edge{x, y}));
          break;
        }
      if (!c.strict_drop) break;
    }
  }
  return c;
}

Decomposition decompose(const ValuedFunction& f, const DecomposeOptions& opts) {
  Decomposition d;
  d.monotone = is_monotone(f);
  if (!d.monotone) {
    d.matching = max_weight_min_card_matching(f, opts.matching);
    d.components = build_components(f, d.matching, merge_pairs(f.domain(), d.matching));
  }
  if (opts.verify) d.certificate = verify_decomposition(f, d, opts.exact);
  return d;
}

// ---------------------------------------------------------------------------

ChainCheck robust_chain_check(const ValuedFunction& f, const EdgeColoring& col, const Decomposition& d) {
  ChainCheck cc;
  const std::size_t n = f.size();
  const auto profile = violation_profile(f);
  const auto full = colored_counts(f, profile, col);
  cc.values[0] = sqrt_mean(full.red_out) + sqrt_mean(full.blue_in);

  auto restricted = [&](auto&& keep) {
    ColoredCounts c{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    for (const Edge& e : profile.violated_edges) {
      if (!keep(e)) continue;
      if (col.at(e) == Color::red)
        ++c.red_out[e.lower];
      else
        ++c.blue_in[e.upper];
    }
    return sqrt_mean(c.red_out) + sqrt_mean(c.blue_in);
  };

  cc.values[1] = restricted([&](Edge e) {
    for (const auto& comp : d.components)
      if (comp.graph.contains_edge(e)) return true;
    return false;
  });
  double third = 0.0, fourth = 0.0;
  for (const auto& comp : d.components) {
    third += restricted([&](Edge e) { return comp.graph.contains_edge(e); });
    const auto pi = violation_profile(comp.fi);
    ColoredCounts c{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    for (const Edge& e : pi.violated_edges) {
      const auto it = col.find(e);
      if (it == col.end())
        throw Error(ErrorCode::invalid_coloring, "f_i violates edge " + edge_str(e) + " outside the coloring domain");
      if (it->second == Color::red)
        ++c.red_out[e.lower];
      else
        ++c.blue_in[e.upper];
    }
    fourth += sqrt_mean(c.red_out) + sqrt_mean(c.blue_in);
  }
  cc.values[2] = third;
  cc.values[3] = fourth;
  cc.first_ge = cc.values[0] >= cc.values[1];
  cc.middle_eq = std::abs(cc.values[1] - cc.values[2]) <= 1e-12;
  cc.last_ge = cc.values[2] >= cc.values[3];
  if (!cc.first_ge)
    cc.failing_step = 1;
  else if (!cc.middle_eq)
    cc.failing_step = 2;
  else if (!cc.last_ge)
    cc.failing_step = 3;
  Rational sum = 0;
  for (const Rational& e : d.certificate.epsilon_i) sum += e;
  cc.half_epsilon = 2 * sum >= d.certificate.epsilon_f;
  return cc;
}

EdgeBound edge_bound_check(const ValuedFunction& f, const ExactLimits& limits) {
  if (!f.domain().is_hypercube()) throw Error(ErrorCode::invalid_argument, "edge bound is stated on hypercubes");
  EdgeBound b;
  b.violated_edges = violation_profile(f).violated_edges.size();
  b.cover = exact_distance(f, CoverMethod::automatic, limits).cover.size();
  // ε·2^{d-1} = cover/2 and ε·2^d = cover.
  b.half_bound = 2 * b.violated_edges >= b.cover;
  b.full_bound = b.violated_edges >= b.cover;
  return b;
}

namespace {

nlohmann::ordered_json rational_json(const Rational& r) {
  nlohmann::ordered_json j;
  j["num"] = r.numerator();
  j["den"] = r.denominator();
  j["value"] = boost::rational_cast<double>(r);
  return j;
}

}  // namespace

nlohmann::ordered_json decomposition_to_json(const Decomposition& d) {
  nlohmann::ordered_json j;
  j["monotone"] = d.monotone;
  j["k"] = d.k();
  auto pairs = nlohmann::ordered_json::array();
  for (const Edge& e : d.matching.pairs) pairs.push_back({e.lower, e.upper});
  j["matching"] = std::move(pairs);
  auto comps = nlohmann::ordered_json::array();
  for (const auto& c : d.components) {
    nlohmann::ordered_json cj;
    cj["sources"] = c.block.sources;
    cj["sinks"] = c.block.sinks;
    cj["pairs"] = c.block.pairs;
    cj["vertices"] = members(c.graph.vertices());
    cj["f_i"] = std::vector<double>(c.fi.values().begin(), c.fi.values().end());
    comps.push_back(std::move(cj));
  }
  j["components"] = std::move(comps);
  const auto& cert = d.certificate;
  nlohmann::ordered_json cj;
  cj["ok"] = cert.ok();
  cj["sum_bound"] = cert.sum_bound;
  cj["edges_inside"] = cert.edges_inside;
  cj["disjoint"] = cert.disjoint;
  cj["matchings_violated"] = cert.matchings_violated;
  cj["strict_drop"] = cert.strict_drop;
  cj["matching_size_bound"] = cert.matching_size_bound;
  cj["epsilon_f"] = rational_json(cert.epsilon_f);
  cj["epsilon_sum"] = rational_json(cert.epsilon_sum);
  auto eps = nlohmann::ordered_json::array();
  for (const Rational& e : cert.epsilon_i) eps.push_back(rational_json(e));
  cj["epsilon_i"] = std::move(eps);
  cj["violated_f"] = cert.violated_f;
  cj["violated_i"] = cert.violated_i;
  cj["witnesses"] = cert.witnesses;
  j["certificate"] = std::move(cj);
  return j;
}

}  // namespace rvmono
