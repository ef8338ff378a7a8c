#include "rvmono/dist_approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "rvmono/random.hpp"

namespace rvmono {

namespace {

int cube_dimension(const Poset& dom) {
  if (!dom.is_hypercube()) throw Error(ErrorCode::invalid_argument, "capture statistics need a hypercube");
  return dom.dimension();
}

void check_coordinates(const CoordinateSet& s, int d) {
  for (int i : s)
    if (i < 1 || i > d)
      throw Error(ErrorCode::vertex_out_of_range, "coordinate " + std::to_string(i) + " outside [1," +
                                                      std::to_string(d) + "]");
}

Vertex bit(int coordinate) { return Vertex{1} << (coordinate - 1); }

// Edge between u and v = u ^ bit, oriented by the zero/one coordinate.
template <typename Value>
bool edge_violated(Value&& val, Vertex u, Vertex v) {
  const Vertex lo = std::min(u, v), hi = std::max(u, v);
  return val(lo) > val(hi);
}

template <typename Value>
bool capture_with(Value&& val, Vertex x, const CoordinateSet& s) {
  for (int i : s) {
    const Vertex y = x ^ bit(i);
    if (!edge_violated(val, x, y)) continue;
    bool clean = true;
    for (int j : s) {
      if (j == i) continue;
      if (edge_violated(val, y, y ^ bit(j))) {
        clean = false;
        break;
      }
    }
    if (clean) return true;
  }
  return false;
}

}  // namespace

bool capture(const ValuedFunction& f, Vertex x, const CoordinateSet& s) {
  const int d = cube_dimension(f.domain());
  f.domain().check_vertex(x);
  check_coordinates(s, d);
  return capture_with([&](Vertex v) { return f(v); }, x, s);
}

Rational mu_exact(const ValuedFunction& f, const CoordinateSet& s) {
  check_coordinates(s, cube_dimension(f.domain()));
  std::int64_t hits = 0;
  for (Vertex x = 0; x < f.size(); ++x)
    if (capture_with([&](Vertex v) { return f(v); }, x, s)) ++hits;
  return Rational(hits, static_cast<std::int64_t>(f.size()));
}

std::uint64_t hoeffding_samples(double a, double delta) {
  if (!(a > 0 && a < 1) || !(delta > 0 && delta < 1))
    throw Error(ErrorCode::invalid_argument, "additive error and failure probability must lie in (0,1)");
  return static_cast<std::uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * a * a)));
}

Estimate mu_estimate(CountingOracle& oracle, const CoordinateSet& s, double additive_error, double failure_prob,
                     std::uint64_t seed) {
  const int d = cube_dimension(oracle.domain());
  check_coordinates(s, d);
  const std::uint64_t start = oracle.query_count();
  Estimate est;
  est.samples = hoeffding_samples(additive_error, failure_prob);
  Rng rng = make_rng(seed);
  const Vertex full = (Vertex{1} << d) - 1;
  std::unordered_map<Vertex, double> seen;
  for (std::uint64_t k = 0; k < est.samples; ++k) {
    const Vertex x = uniform_int<Vertex>(rng, 0, full);
    seen.clear();
    seen[x] = oracle.query(x);
    for (int i : s) seen[x ^ bit(i)] = oracle.query(x ^ bit(i));
    for (int i : s)
      for (int j : s)
        if (i != j) seen[x ^ bit(i) ^ bit(j)] = oracle.query(x ^ bit(i) ^ bit(j));
    if (capture_with([&](Vertex v) { return seen.at(v); }, x, s)) ++est.hits;
  }
  est.value = static_cast<double>(est.hits) / static_cast<double>(est.samples);
  est.queries = oracle.query_count() - start;
  return est;
}

Estimate violated_fraction_estimate(CountingOracle& oracle, double additive_error, double failure_prob,
                                    std::uint64_t seed) {
  const int d = cube_dimension(oracle.domain());
  const std::uint64_t start = oracle.query_count();
  Estimate est;
  est.samples = hoeffding_samples(additive_error, failure_prob);
  Rng rng = make_rng(seed);
  const Vertex full = (Vertex{1} << d) - 1;
  for (std::uint64_t k = 0; k < est.samples; ++k) {
    const Vertex x = uniform_int<Vertex>(rng, 0, full);
    const int i = uniform_int(rng, 1, d);
    const Vertex lo = x & ~bit(i), hi = x | bit(i);
    if (oracle.query(lo) > oracle.query(hi)) ++est.hits;
  }
  est.value = static_cast<double>(est.hits) / static_cast<double>(est.samples);
  est.queries = oracle.query_count() - start;
  return est;
}

// ---------------------------------------------------------------------------

const char* to_string(Closeness c) { return c == Closeness::close ? "close" : "far"; }

void CaptureConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0, 1/2]");
  if (!(c_prime > 0.0) || !(c_edge > 0.0)) throw Error(ErrorCode::invalid_argument, "constants must be positive");
  if (!(failure_budget > 0.0 && failure_budget <= 1.0 / 3.0))
    throw Error(ErrorCode::invalid_argument, "failure budget must lie in (0, 1/3]");
}

ApproxMonoReport approx_mono(CountingOracle& oracle, const CaptureConfig& cfg) {
  cfg.validate();
  const int d = cube_dimension(oracle.domain());
  const std::uint64_t start = oracle.query_count();
  ApproxMonoReport rep;
  rep.log_d = std::max(std::log2(static_cast<double>(d)), 1.0);
  const double scale = 4.0 * std::sqrt(d * rep.log_d);
  const int top = static_cast<int>(std::floor(std::log2(static_cast<double>(d))));
  const int estimates = 1 + (top + 1);
  rep.failure_per_estimate = cfg.failure_budget / estimates;

  rep.nu_threshold = 3.0 * cfg.epsilon / scale;
  rep.nu_error = std::min(cfg.c_edge * cfg.epsilon / scale, 0.5);
  rep.nu = violated_fraction_estimate(oracle, rep.nu_error, rep.failure_per_estimate, derive_seed(cfg.seed, 0));
  rep.nu_far = rep.nu.value >= rep.nu_threshold;
  bool far = rep.nu_far;

  if (!far || !cfg.early_exit) {
    for (int level = 0; level <= top; ++level) {
      LevelReport lv;
      lv.t = 1 << level;
      Rng pick = make_rng(derive_seed(cfg.seed, 2 * level + 1));
      for (int i = 1; i <= d; ++i)
        if (bernoulli(pick, 1.0 / lv.t)) lv.s.push_back(i);
      lv.threshold = 3.0 * cfg.c_prime * cfg.epsilon / scale;
      lv.error = std::min(cfg.c_prime * cfg.epsilon / scale, 0.5);
      lv.mu = mu_estimate(oracle, lv.s, lv.error, rep.failure_per_estimate, derive_seed(cfg.seed, 2 * level + 2));
      lv.far = lv.mu.value >= lv.threshold;
      rep.levels.push_back(std::move(lv));
      if (rep.levels.back().far) {
        far = true;
        if (cfg.early_exit) break;
      }
    }
  }
  rep.verdict = far ? Closeness::far : Closeness::close;
  rep.queries = oracle.query_count() - start;
  return rep;
}

DistanceReport approx_distance(CountingOracle& oracle, double alpha, const CaptureConfig& cfg) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw Error(ErrorCode::invalid_argument, "alpha must lie in (0, 1/2]");
  const std::uint64_t start = oracle.query_count();
  DistanceReport rep;
  int level = 0;
  for (double eps = 0.5; eps >= alpha; eps /= 2, ++level) {
    DistanceLevel dl;
    dl.epsilon = eps;
    for (int rep_index = 0; rep_index < 3; ++rep_index) {
      CaptureConfig c = cfg;
      c.epsilon = eps;
      c.seed = derive_seed(cfg.seed, 3 * static_cast<std::uint64_t>(level) + rep_index);
      if (approx_mono(oracle, c).verdict == Closeness::far) ++dl.far_votes;
    }
    dl.far = dl.far_votes >= 2;
    rep.levels.push_back(dl);
    if (dl.far) {
      rep.estimate = eps;
      rep.queries = oracle.query_count() - start;
      return rep;
    }
  }
  rep.estimate = alpha;
  rep.promise_violated = true;
  rep.queries = oracle.query_count() - start;
  return rep;
}

// ---------------------------------------------------------------------------

EdgeColoring u_degree_coloring(const ValuedFunction& f) {
  const auto p = violation_profile(f);
  EdgeColoring col;
  for (const Edge& e : p.violated_edges)
    col.emplace(e, p.total_degree[e.lower] >= p.total_degree[e.upper] ? Color::red : Color::blue);
  return col;
}

namespace {

int dyadic_floor(int v) {
  int t = 1;
  while (2 * t <= v) t *= 2;
  return t;
}

}  // namespace

BucketProfile bucket_profile(const ValuedFunction& f) {
  cube_dimension(f.domain());
  const auto p = violation_profile(f);
  const auto counts = colored_counts(f, p, u_degree_coloring(f));
  BucketProfile bp;
  for (Vertex x = 0; x < f.size(); ++x) {
    const int parity = popcount(x) & 1;
    bp.sums[2 * parity] += std::sqrt(static_cast<double>(counts.red_out[x]));
    bp.sums[2 * parity + 1] += std::sqrt(static_cast<double>(counts.blue_in[x]));
  }
  const auto best = static_cast<int>(std::max_element(bp.sums.begin(), bp.sums.end()) - bp.sums.begin());
  bp.odd = best >= 2;
  bp.color = best % 2 == 0 ? Color::red : Color::blue;
  const auto& chosen = bp.color == Color::red ? counts.red_out : counts.blue_in;
  for (Vertex x = 0; x < f.size(); ++x) {
    if ((popcount(x) & 1) != static_cast<int>(bp.odd) || chosen[x] == 0) continue;
    ++bp.blocks[{dyadic_floor(p.total_degree[x]), dyadic_floor(chosen[x])}];
  }
  return bp;
}

namespace {

nlohmann::ordered_json estimate_json(const Estimate& e) {
  nlohmann::ordered_json j;
  j["value"] = e.value;
  j["samples"] = e.samples;
  j["hits"] = e.hits;
  j["queries"] = e.queries;
  return j;
}

}  // namespace

nlohmann::ordered_json approx_report_to_json(const ApproxMonoReport& rep) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["log_d"] = rep.log_d;
  j["failure_per_estimate"] = rep.failure_per_estimate;
  j["nu"] = estimate_json(rep.nu);
  j["nu_threshold"] = rep.nu_threshold;
  j["nu_error"] = rep.nu_error;
  j["nu_far"] = rep.nu_far;
  auto levels = nlohmann::ordered_json::array();
  for (const auto& lv : rep.levels) {
    nlohmann::ordered_json l;
    l["t"] = lv.t;
    l["S"] = lv.s;
    l["mu"] = estimate_json(lv.mu);
    l["threshold"] = lv.threshold;
    l["error"] = lv.error;
    l["far"] = lv.far;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["queries"] = rep.queries;
  return j;
}

nlohmann::ordered_json distance_report_to_json(const DistanceReport& rep) {
  nlohmann::ordered_json j;
  j["estimate"] = rep.estimate;
  j["promise_violated"] = rep.promise_violated;
  auto levels = nlohmann::ordered_json::array();
  for (const auto& l : rep.levels)
    levels.push_back({{"epsilon", l.epsilon}, {"far_votes", l.far_votes}, {"far", l.far}});
  j["levels"] = std::move(levels);
  j["queries"] = rep.queries;
  return j;
}

}  // namespace rvmono
