#include "rvmono/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "rvmono/random.hpp"

namespace rvmono {

ViolationProfile violation_profile(const ValuedFunction& f) {
  const std::size_t n = f.size();
  ViolationProfile p;
  p.out_counts.assign(n, 0);
  p.total_degree.assign(n, 0);
  p.undirected_counts.assign(n, 0);
  f.domain().for_each_edge([&](Edge e) {
    const double lo = f(e.lower);
    const double hi = f(e.upper);
    if (lo > hi) {
      p.violated_edges.push_back(e);
      ++p.out_counts[e.lower];
      ++p.total_degree[e.lower];
      ++p.total_degree[e.upper];
    }
    if (lo != hi) {
      ++p.influential_edges;
      ++p.undirected_counts[lo > hi ? e.lower : e.upper];
    }
  });
  return p;
}

EdgeColoring uniform_coloring(std::span<const Edge> edges, Color c) {
  EdgeColoring col;
  for (const Edge& e : edges) col.emplace(e, c);
  return col;
}

EdgeColoring random_coloring(std::span<const Edge> edges, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  EdgeColoring col;
  for (const Edge& e : edges) col.emplace(e, bernoulli(rng, 0.5) ? Color::red : Color::blue);
  return col;
}

ColoredCounts colored_counts(const ValuedFunction& f, const ViolationProfile& profile,
                             const EdgeColoring& col) {
  if (col.size() != profile.violated_edges.size())
    throw Error(ErrorCode::invalid_coloring,
                "coloring has " + std::to_string(col.size()) + " entries but S_f^- has " +
                    std::to_string(profile.violated_edges.size()) + " edges");
  ColoredCounts c;
  c.red_out.assign(f.size(), 0);
  c.blue_in.assign(f.size(), 0);
  for (const Edge& e : profile.violated_edges) {
    const auto it = col.find(e);
    if (it == col.end())
      throw Error(ErrorCode::invalid_coloring, "violated edge (" + std::to_string(e.lower) + "," +
                                                   std::to_string(e.upper) + ") is uncolored");
    if (it->second == Color::red)
      ++c.red_out[e.lower];
    else
      ++c.blue_in[e.upper];
  }
  return c;
}

namespace {

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace

double sqrt_mean(std::span<const int> counts) {
  if (counts.empty()) return 0.0;
  std::vector<double> roots(counts.size());
  std::transform(counts.begin(), counts.end(), roots.begin(),
                 [](int c) { return std::sqrt(static_cast<double>(c)); });
  return pairwise_sum(roots) / static_cast<double>(counts.size());
}

double directed_objective(const ValuedFunction& f) { return sqrt_mean(violation_profile(f).out_counts); }

double robust_objective(const ValuedFunction& f, const EdgeColoring& col) {
  const auto profile = violation_profile(f);
  const auto c = colored_counts(f, profile, col);
  return sqrt_mean(c.red_out) + sqrt_mean(c.blue_in);
}

double undirected_objective(const ValuedFunction& f) {
  return sqrt_mean(violation_profile(f).undirected_counts);
}

Rational dist_to_const_exact(const ValuedFunction& f) {
  std::unordered_map<double, std::int64_t> freq;
  std::int64_t best = 0;
  for (double v : f.values()) best = std::max(best, ++freq[v]);
  const auto n = static_cast<std::int64_t>(f.size());
  return Rational(n - best, n);
}

double dist_to_const(const ValuedFunction& f) { return boost::rational_cast<double>(dist_to_const_exact(f)); }

// ---------------------------------------------------------------------------

const char* to_string(GoodGraphStatus s) {
  switch (s) {
    case GoodGraphStatus::left_good: return "left-good";
    case GoodGraphStatus::right_good: return "right-good";
    case GoodGraphStatus::both: return "both";
    case GoodGraphStatus::neither: return "neither";
  }
  return "?";
}

GoodGraphStatus check_good_graph(std::span<const Vertex> a, std::span<const Vertex> b,
                                 std::span<const Edge> edges, std::size_t k, std::size_t delta) {
  std::unordered_map<Vertex, std::size_t> deg_a, deg_b;
  for (Vertex v : a) deg_a.emplace(v, 0);
  for (Vertex v : b) deg_b.emplace(v, 0);
  for (const Edge& e : edges) {
    auto ia = deg_a.find(e.lower);
    auto ib = deg_b.find(e.upper);
    if (ia == deg_a.end() || ib == deg_b.end())
      throw Error(ErrorCode::invalid_argument, "edge (" + std::to_string(e.lower) + "," +
                                                   std::to_string(e.upper) + ") does not run from A to B");
    ++ia->second;
    ++ib->second;
  }
  auto good = [&](const auto& x_side, const auto& y_side) {
    if (x_side.size() != k) return false;
    for (const auto& [v, deg] : x_side)
      if (deg != delta) return false;
    for (const auto& [v, deg] : y_side)
      if (deg > 2 * delta) return false;
    return true;
  };
  const bool left = good(deg_a, deg_b);
  const bool right = good(deg_b, deg_a);
  if (left && right) return GoodGraphStatus::both;
  if (left) return GoodGraphStatus::left_good;
  if (right) return GoodGraphStatus::right_good;
  return GoodGraphStatus::neither;
}

// ---------------------------------------------------------------------------

double PersistenceEstimate::standard_error() const {
  if (exact || total == 0) return 0.0;
  const double p = probability();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

namespace {

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(c));
}

// Calls fn(mask) for every size-k subset of `coords`, as a vertex bitmask.
template <typename F>
void for_each_subset(const std::vector<int>& coords, int k, F&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int n = static_cast<int>(coords.size());
  while (true) {
    Vertex mask = 0;
    for (int i : idx) mask |= Vertex{1} << coords[i];
    fn(mask);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

PersistenceEstimate persistence_probability(const ValuedFunction& f, Vertex x, int tau, Direction dir,
                                            const PersistenceMode& mode) {
  const Poset& dom = f.domain();
  if (!dom.is_hypercube()) throw Error(ErrorCode::invalid_argument, "persistence is defined on hypercubes");
  dom.check_vertex(x);
  if (tau < 1) throw Error(ErrorCode::invalid_argument, "tau must be >= 1");

  std::vector<int> free;
  for (int i = 0; i < dom.dimension(); ++i)
    if (((x >> i) & 1U) == (dir == Direction::right ? 0U : 1U)) free.push_back(i);

  PersistenceEstimate est;
  if (tau > static_cast<int>(free.size())) {
    est.favorable = est.total = 1;
    return est;
  }
  const double fx = f(x);
  auto favorable = [&](Vertex mask) {
    const double fy = f(x ^ mask);
    return dir == Direction::right ? fy <= fx : fy >= fx;
  };

  const std::uint64_t subsets = binomial_capped(static_cast<int>(free.size()), tau, mode.enumeration_cap);
  const bool enumerate = mode.kind == PersistenceMode::Kind::exact ||
                         (mode.kind == PersistenceMode::Kind::automatic && subsets <= mode.enumeration_cap);
  if (enumerate) {
    if (subsets > mode.enumeration_cap)
      throw Error(ErrorCode::size_cap_exceeded, "persistence enumeration exceeds " +
                                                    std::to_string(mode.enumeration_cap) + " subsets");
    for_each_subset(free, tau, [&](Vertex mask) {
      ++est.total;
      if (favorable(mask)) ++est.favorable;
    });
    return est;
  }

  est.exact = false;
  Rng rng = make_rng(mode.seed);
  std::vector<int> pool = free;
  for (std::uint64_t s = 0; s < mode.samples; ++s) {
    Vertex mask = 0;
    for (int i = 0; i < tau; ++i) {
      const auto j = uniform_int<std::size_t>(rng, static_cast<std::size_t>(i), pool.size() - 1);
      std::swap(pool[i], pool[j]);
      mask |= Vertex{1} << pool[i];
    }
    ++est.total;
    if (favorable(mask)) ++est.favorable;
  }
  return est;
}

bool is_persistent(const ValuedFunction& f, Vertex x, int tau, Direction dir, const PersistenceMode& mode) {
  const auto est = persistence_probability(f, x, tau, dir, mode);
  return est.favorable * 10 > est.total * 9;
}

bool in_weight_band(Vertex x, int d, double band_constant) {
  const double half = d / 2.0;
  const double width = d > 1 ? band_constant * std::sqrt(d * std::log(static_cast<double>(d))) : 0.5;
  return std::abs(popcount(x) - half) <= width;
}

PersistenceCheckReport persistence_decomposition_check(const ValuedFunction& f, int tau, Direction dir,
                                                       std::uint64_t enumeration_cap) {
  const ValuedFunction ranked = canonical_rank(f);
  const int r = static_cast<int>(image_size(ranked));
  PersistenceMode mode;
  mode.enumeration_cap = enumeration_cap;

  std::vector<ValuedFunction> thresholds;
  thresholds.reserve(static_cast<std::size_t>(r) + 1);
  for (int t = 0; t <= r; ++t) thresholds.push_back(threshold(ranked, t));
  // Right persistence at x matches h_{f(x)}; left persistence matches h_{f(x)-1}.
  const int shift = dir == Direction::right ? 0 : -1;

  PersistenceCheckReport rep;
  rep.tau = tau;
  rep.image_size = r;
  rep.nonpersistent_threshold.assign(static_cast<std::size_t>(r) + 1, 0);
  for (Vertex x = 0; x < ranked.size(); ++x) {
    const bool pf = is_persistent(ranked, x, tau, dir, mode);
    if (!pf) ++rep.nonpersistent_f;
    for (int t = 0; t <= r; ++t) {
      const bool pt = is_persistent(thresholds[t], x, tau, dir, mode);
      if (!pt) ++rep.nonpersistent_threshold[t];
      if (t == static_cast<int>(ranked(x)) + shift && pt != pf && rep.iff_holds) {
        rep.iff_holds = false;
        rep.iff_witness = x;
      }
    }
  }
  std::uint64_t sum = 0;
  for (int t = 1; t < r; ++t) sum += rep.nonpersistent_threshold[t];
  rep.union_bound_holds = rep.nonpersistent_f <= sum;
  rep.top_threshold_all_persistent = rep.nonpersistent_threshold[dir == Direction::right ? r : 0] == 0;
  return rep;
}

nlohmann::ordered_json profile_to_json(const ValuedFunction& f, const EdgeColoring* col) {
  const auto p = violation_profile(f);
  nlohmann::ordered_json j;
  j["I_minus"] = p.out_counts;
  j["U_minus"] = p.total_degree;
  j["I_undirected"] = p.undirected_counts;
  j["violated_edges"] = p.violated_edges.size();
  j["objective_directed"] = sqrt_mean(p.out_counts);
  if (col != nullptr) {
    const auto c = colored_counts(f, p, *col);
    j["objective_robust"] = sqrt_mean(c.red_out) + sqrt_mean(c.blue_in);
  }
  j["objective_undirected"] = sqrt_mean(p.undirected_counts);
  j["dist_const"] = dist_to_const(f);
  return j;
}

}  // namespace rvmono
