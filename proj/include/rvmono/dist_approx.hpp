#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvmono/isoperimetry.hpp"
#include "rvmono/testers.hpp"

namespace rvmono {

/// 1-based coordinates, ascending, each in [1, d].
using CoordinateSet = std::vector<int>;

/// True iff some i ∈ S has a violated edge between x and x^(i) while y = x^(i)
/// has no violated edge along any other coordinate of S.
bool capture(const ValuedFunction& f, Vertex x, const CoordinateSet& s);

/// Exact fraction of vertices x with capture(f, x, S).
Rational mu_exact(const ValuedFunction& f, const CoordinateSet& s);

struct Estimate {
  double value = 0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t queries = 0;
};

/// Two-sided Hoeffding: ceil(ln(2/δ) / (2 a²)).
std::uint64_t hoeffding_samples(double additive_error, double failure_prob);

/// Queries x, every x^(i) and every x^(i,j) for i ≠ j in S, independent of answers.
Estimate mu_estimate(CountingOracle& oracle, const CoordinateSet& s, double additive_error, double failure_prob,
                     std::uint64_t seed);

/// Estimate of |S_f^-| / (d·2^{d-1}) from uniform edges.
Estimate violated_fraction_estimate(CountingOracle& oracle, double additive_error, double failure_prob,
                                    std::uint64_t seed);

struct CaptureConfig {
  double epsilon = 0.25;
  double c_prime = 1.0;
  double c_edge = 1.0;
  double failure_budget = 1.0 / 3.0;
  std::uint64_t seed = 0;
  bool early_exit = true;

  void validate() const;
};

enum class Closeness { close, far };
const char* to_string(Closeness c);

struct LevelReport {
  int t = 1;
  CoordinateSet s;
  double threshold = 0;
  double error = 0;
  Estimate mu;
  bool far = false;
};

struct ApproxMonoReport {
  Closeness verdict = Closeness::close;
  double log_d = 1;  // max(log2 d, 1)
  double nu_threshold = 0;
  double nu_error = 0;
  double failure_per_estimate = 0;
  Estimate nu;
  bool nu_far = false;
  std::vector<LevelReport> levels;
  std::uint64_t queries = 0;
};

ApproxMonoReport approx_mono(CountingOracle& oracle, const CaptureConfig& cfg);

struct DistanceLevel {
  double epsilon = 0;
  int far_votes = 0;
  bool far = false;
};

struct DistanceReport {
  double estimate = 0;
  bool promise_violated = false;
  std::vector<DistanceLevel> levels;
  std::uint64_t queries = 0;
};

/// Tries ε = 1/2, 1/4, ... down to alpha; each level is a majority of three
/// approx_mono runs. Returns the first far level, or alpha with the promise flag.
DistanceReport approx_distance(CountingOracle& oracle, double alpha, const CaptureConfig& cfg);

/// Each violated edge red iff U_f^-(lower) >= U_f^-(upper).
EdgeColoring u_degree_coloring(const ValuedFunction& f);

struct BucketProfile {
  bool odd = false;          // parity of |x| in the selected side
  Color color = Color::red;  // color b of the selected side
  // Σ sqrt(I_{f,b}^-(x)) over B; index 2*parity + color (even/red, even/blue, odd/red, odd/blue).
  std::array<double, 4> sums{};
  // (t, s) -> |B_{t,s}| with t <= U(x) < 2t and s <= I_{f,b}(x) < 2s.
  std::map<std::pair<int, int>, std::size_t> blocks;
};

BucketProfile bucket_profile(const ValuedFunction& f);

nlohmann::ordered_json approx_report_to_json(const ApproxMonoReport& rep);
nlohmann::ordered_json distance_report_to_json(const DistanceReport& rep);

}  // namespace rvmono
