#include "rvmono/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "rvmono/matching.hpp"
#include "rvmono/random.hpp"

namespace rvmono {

bool is_monotone(const ValuedFunction& f) {
  bool ok = true;
  f.domain().for_each_edge([&](Edge e) {
    if (f(e.lower) > f(e.upper)) ok = false;
  });
  return ok;
}

namespace {

std::vector<Edge> violated_pairs(const ValuedFunction& f) {
  std::vector<Edge> out;
  f.domain().for_each_strict_pair([&](Edge e) {
    if (f(e.lower) > f(e.upper)) out.push_back(e);
  });
  return out;
}

bool two_valued(const ValuedFunction& f, double& lo, double& hi) {
  lo = hi = f.size() ? f(0) : 0.0;
  for (double v : f.values()) {
    if (v == lo || v == hi) continue;
    if (lo != hi) return false;
    (v < lo ? lo : hi) = v;
  }
  return true;
}

void enforce_cap(const ValuedFunction& f, bool boolean, const ExactLimits& limits) {
  const std::size_t cap = boolean ? limits.boolean_cap : limits.general_cap;
  if (f.size() > cap)
    throw Error(ErrorCode::size_cap_exceeded, "exact distance needs N <= " + std::to_string(cap) + ", got " +
                                                  std::to_string(f.size()));
}

// Cover = {x : x is high-valued and its left copy is in the König cover} ∪ low side likewise.
std::vector<Vertex> bipartite_cover(const ValuedFunction& f, double hi) {
  const std::size_t n = f.size();
  std::vector<int> side_index(n, -1);
  std::vector<Vertex> left, right;
  for (Vertex x = 0; x < n; ++x) {
    if (f(x) == hi) {
      side_index[x] = static_cast<int>(left.size());
      left.push_back(x);
    } else {
      side_index[x] = static_cast<int>(right.size());
      right.push_back(x);
    }
  }
  std::vector<std::vector<int>> adj(left.size());
  for (const Edge& e : violated_pairs(f)) adj[side_index[e.lower]].push_back(side_index[e.upper]);
  const auto match = max_bipartite_matching(adj, static_cast<int>(right.size()));
  const auto kc = konig_cover(adj, static_cast<int>(right.size()), match);
  std::vector<Vertex> cover;
  for (int l : kc.left) cover.push_back(left[l]);
  for (int r : kc.right) cover.push_back(right[r]);
  std::sort(cover.begin(), cover.end());
  return cover;
}

// The violation relation x ◁ y (x ≺ y, f(x) > f(y)) is a strict order, so the
// violation graph is its comparability graph. A maximum antichain is read off
// a König cover of the split graph; everything outside it is a minimum cover.
std::vector<Vertex> chain_cover(const ValuedFunction& f) {
  const std::size_t n = f.size();
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : violated_pairs(f)) adj[e.lower].push_back(static_cast<int>(e.upper));
  const auto match = max_bipartite_matching(adj, static_cast<int>(n));
  const auto kc = konig_cover(adj, static_cast<int>(n), match);
  std::vector<bool> hit(n, false);
  for (int l : kc.left) hit[l] = true;
  for (int r : kc.right) hit[r] = true;
  std::vector<Vertex> cover;
  for (Vertex x = 0; x < n; ++x)
    if (hit[x]) cover.push_back(x);
  return cover;
}

}  // namespace

ValuedFunction repair(const ValuedFunction& f, const std::vector<Vertex>& cover) {
  const Poset& dom = f.domain();
  const std::size_t n = f.size();
  std::vector<bool> kept(n, true);
  for (Vertex c : cover) kept[c] = false;
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  double min_kept = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, kNone);
  for (Vertex z : dom.topological_order()) {
    if (kept[z]) {
      g[z] = f(z);
      min_kept = std::min(min_kept, f(z));
    }
    dom.for_each_predecessor(z, [&](Vertex p) { g[z] = std::max(g[z], g[p]); });
  }
  if (!std::isfinite(min_kept)) min_kept = 0.0;
  for (double& v : g)
    if (v == kNone) v = min_kept;
  return ValuedFunction(f.domain_ptr(), std::move(g));
}

DistanceCertificate exact_distance(const ValuedFunction& f, CoverMethod method, const ExactLimits& limits) {
  double lo = 0, hi = 0;
  const bool boolean = two_valued(f, lo, hi);
  enforce_cap(f, boolean, limits);
  if (method == CoverMethod::bipartite && !boolean)
    throw Error(ErrorCode::invalid_argument, "bipartite cover needs a two-valued function");
  const bool use_bipartite = method == CoverMethod::bipartite || (method == CoverMethod::automatic && boolean);
  std::vector<Vertex> cover = use_bipartite ? bipartite_cover(f, hi) : chain_cover(f);
  const auto n = static_cast<std::int64_t>(f.size());
  ValuedFunction g = repair(f, cover);
  return DistanceCertificate{Rational(static_cast<std::int64_t>(cover.size()), n), std::move(cover), std::move(g)};
}

Rational exact_epsilon(const ValuedFunction& f, const ExactLimits& limits) {
  return exact_distance(f, CoverMethod::automatic, limits).epsilon;
}

CertificateCheck check_certificate(const ValuedFunction& f, const DistanceCertificate& cert) {
  CertificateCheck c;
  c.repaired_monotone = is_monotone(cert.repaired);
  for (Vertex x = 0; x < f.size(); ++x)
    if (f(x) != cert.repaired(x)) ++c.hamming;
  c.hamming_matches = c.hamming == cert.cover.size();
  std::vector<bool> in(f.size(), false);
  for (Vertex x : cert.cover) in[x] = true;
  c.cover_is_cover = true;
  f.domain().for_each_strict_pair([&](Edge e) {
    if (c.cover_is_cover && f(e.lower) > f(e.upper) && !in[e.lower] && !in[e.upper]) {
      c.cover_is_cover = false;
      c.uncovered = e;
    }
  });
  return c;
}

nlohmann::ordered_json certificate_to_json(const DistanceCertificate& cert) {
  nlohmann::ordered_json j;
  j["epsilon"] = boost::rational_cast<double>(cert.epsilon);
  j["epsilon_num"] = cert.epsilon.numerator();
  j["epsilon_den"] = cert.epsilon.denominator();
  j["cover_size"] = cert.cover.size();
  j["vertex_cover"] = cert.cover;
  j["repaired"] = std::vector<double>(cert.repaired.values().begin(), cert.repaired.values().end());
  return j;
}

ViolationMatchingSizes violation_matching_sizes(const ValuedFunction& f, const ExactLimits& limits) {
  double lo = 0, hi = 0;
  enforce_cap(f, two_valued(f, lo, hi), limits);
  const auto pairs = violated_pairs(f);
  ViolationMatchingSizes s;
  std::vector<bool> used(f.size(), false);
  std::vector<WeightedEdge> unit;
  unit.reserve(pairs.size());
  for (const Edge& e : pairs) {
    unit.push_back({static_cast<int>(e.lower), static_cast<int>(e.upper), 1});
    if (!used[e.lower] && !used[e.upper]) {
      used[e.lower] = used[e.upper] = true;
      ++s.greedy_maximal;
    }
  }
  const auto mate = max_weight_matching(static_cast<int>(f.size()), unit);
  for (std::size_t v = 0; v < mate.size(); ++v)
    if (mate[v] > static_cast<int>(v)) ++s.maximum;
  return s;
}

MatchingOptimum enumerate_matchings_check(const ValuedFunction& f) {
  const std::size_t n = f.size();
  if (n > 16) throw Error(ErrorCode::size_cap_exceeded, "matching enumeration needs N <= 16");
  std::vector<std::uint32_t> nbr(n, 0);
  for (const Edge& e : violated_pairs(f)) {
    nbr[e.lower] |= 1U << e.upper;
    nbr[e.upper] |= 1U << e.lower;
  }
  // best[mask]: optimum over matchings inside the still-free vertex set `mask`.
  const std::uint32_t full = n == 0 ? 0 : (1U << n) - 1;
  std::vector<MatchingOptimum> best(std::size_t{1} << n);
  auto better = [](const MatchingOptimum& a, const MatchingOptimum& b) {
    return a.max_weight > b.max_weight || (a.max_weight == b.max_weight && a.min_cardinality < b.min_cardinality);
  };
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const int v = __builtin_ctz(mask);
    const std::uint32_t rest = mask & (mask - 1);
    MatchingOptimum b = best[rest];
    for (std::uint32_t cand = nbr[v] & rest; cand; cand &= cand - 1) {
      const int u = __builtin_ctz(cand);
      MatchingOptimum m = best[rest & ~(1U << u)];
      m.max_weight += std::abs(f(static_cast<Vertex>(v)) - f(static_cast<Vertex>(u)));
      ++m.min_cardinality;
      if (better(m, b)) b = m;
    }
    best[mask] = b;
    if (mask == full) break;
  }
  return best[full];
}

// ---------------------------------------------------------------------------

namespace {

double exact_objective(const std::vector<int>& red, const std::vector<int>& blue) {
  return sqrt_mean(red) + sqrt_mean(blue);
}

EdgeColoring to_coloring(const std::vector<Edge>& edges, const std::vector<bool>& blue) {
  EdgeColoring col;
  for (std::size_t k = 0; k < edges.size(); ++k) col.emplace(edges[k], blue[k] ? Color::blue : Color::red);
  return col;
}

}  // namespace

ColoringResult worst_coloring(const ValuedFunction& f, ColoringSearch mode, const ColoringSearchOptions& opts) {
  const auto profile = violation_profile(f);
  const auto& edges = profile.violated_edges;
  const std::size_t m = edges.size();
  const std::size_t n = f.size();

  auto counts_for = [&](const std::vector<bool>& blue, std::vector<int>& red_out, std::vector<int>& blue_in) {
    red_out.assign(n, 0);
    blue_in.assign(n, 0);
    for (std::size_t k = 0; k < m; ++k) {
      if (blue[k])
        ++blue_in[edges[k].upper];
      else
        ++red_out[edges[k].lower];
    }
  };

  if (mode == ColoringSearch::exhaustive) {
    if (m > opts.exhaustive_cap)
      throw Error(ErrorCode::size_cap_exceeded, "exhaustive coloring search over " + std::to_string(m) +
                                                    " edges exceeds cap " + std::to_string(opts.exhaustive_cap));
    // Gray-code walk; only the two endpoints of the flipped edge change.
    std::vector<int> red_out(profile.out_counts), blue_in(n, 0);
    long double total = 0;
    for (int c : red_out) total += std::sqrt(static_cast<long double>(c));
    std::vector<bool> blue(m, false);
    long double best = total;
    std::uint64_t best_code = 0;
    const std::uint64_t steps = std::uint64_t{1} << m;
    for (std::uint64_t i = 1; i < steps; ++i) {
      const int k = __builtin_ctzll(i);
      const Edge e = edges[k];
      total -= std::sqrt(static_cast<long double>(red_out[e.lower])) +
               std::sqrt(static_cast<long double>(blue_in[e.upper]));
      if (blue[k]) {
        ++red_out[e.lower];
        --blue_in[e.upper];
      } else {
        --red_out[e.lower];
        ++blue_in[e.upper];
      }
      blue[k] = !blue[k];
      total += std::sqrt(static_cast<long double>(red_out[e.lower])) +
               std::sqrt(static_cast<long double>(blue_in[e.upper]));
      if (total < best - 1e-12L) {
        best = total;
        best_code = i ^ (i >> 1);
      }
    }
    std::vector<bool> chosen(m);
    for (std::size_t k = 0; k < m; ++k) chosen[k] = (best_code >> k) & 1U;
    std::vector<int> r, b;
    counts_for(chosen, r, b);
    return ColoringResult{to_coloring(edges, chosen), exact_objective(r, b)};
  }

  Rng rng = make_rng(opts.seed);
  ColoringResult result;
  bool have = false;
  const int restarts = std::max(opts.restarts, 2);
  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<bool> blue(m);
    for (std::size_t k = 0; k < m; ++k)
      blue[k] = restart == 0 ? false : restart == 1 ? true : bernoulli(rng, 0.5);
    std::vector<int> red_out, blue_in;
    counts_for(blue, red_out, blue_in);
    auto root = [](int c) { return std::sqrt(static_cast<double>(c)); };
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = 0; k < m; ++k) {
        const Edge e = edges[k];
        const double before = root(red_out[e.lower]) + root(blue_in[e.upper]);
        const double after = blue[k] ? root(red_out[e.lower] + 1) + root(blue_in[e.upper] - 1)
                                     : root(red_out[e.lower] - 1) + root(blue_in[e.upper] + 1);
        if (after < before - 1e-12) {
          if (blue[k]) {
            ++red_out[e.lower];
            --blue_in[e.upper];
          } else {
            --red_out[e.lower];
            ++blue_in[e.upper];
          }
          blue[k] = !blue[k];
          improved = true;
        }
      }
    }
    const double value = exact_objective(red_out, blue_in);
    if (!have || value < result.objective) {
      result = ColoringResult{to_coloring(edges, blue), value};
      have = true;
    }
  }
  return result;
}

MedianThreshold median_threshold(const ValuedFunction& f) {
  std::map<double, std::size_t> freq;
  for (double v : f.values()) ++freq[v];
  const std::size_t n = f.size();
  std::size_t below = 0;
  for (const auto& [v, c] : freq) {
    if (2 * (below + c) >= n) {
      // Case 1 iff Pr[f < m] < (1 - Pr[f = m]) / 2.
      const bool strict = 2 * below < n - c;
      std::vector<double> h(n);
      for (Vertex x = 0; x < n; ++x) h[x] = (strict ? f(x) > v : f(x) >= v) ? 1.0 : 0.0;
      return MedianThreshold{v, strict ? 1 : 2, ValuedFunction(f.domain_ptr(), std::move(h))};
    }
    below += c;
  }
  throw Error(ErrorCode::invalid_argument, "median of an empty function");
}

}  // namespace rvmono
