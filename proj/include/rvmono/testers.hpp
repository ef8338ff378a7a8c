#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvmono/function.hpp"
#include "rvmono/random.hpp"

namespace rvmono {

enum class Verdict { accept, reject };
const char* to_string(Verdict v);

struct TesterConfig {
  double epsilon = 0.1;
  int r = 2;
  double budget_constant = 4.0;
  std::uint64_t seed = 0;
  /// Stop at the first violation. Off: run every draw (for query replay).
  bool early_exit = true;
  /// Overrides the computed draw count per setting.
  std::optional<std::uint64_t> repetitions;

  void validate() const;
};

/// A comparable pair lower ≺ upper with f(lower) > f(upper).
struct Witness {
  Vertex lower = 0;
  Vertex upper = 0;
  double f_lower = 0;
  double f_upper = 0;
};

struct SettingStats {
  int b = 0;
  int tau = 1;
  std::uint64_t draws = 0;
  std::uint64_t violations = 0;
};

struct TesterReport {
  Verdict verdict = Verdict::accept;
  std::uint64_t queries = 0;
  std::uint64_t repetitions = 0;  // per setting
  std::optional<Witness> witness;
  std::vector<SettingStats> per_setting;
};

/// Draw from D_pair(b, τ): uniform x, flip a uniform τ-subset of the
/// coordinates equal to b (y = x when fewer than τ exist).
std::pair<Vertex, Vertex> sample_pair(int b, int tau, int d, Rng& rng);

/// τ ∈ {1, 2, 4, ..., 2^p} with 2^p <= sqrt(d / log2 d); {1} for d <= 2.
std::vector<int> tau_schedule(int d);

/// ceil(budget · min(r·sqrt(d)/ε², d/ε) · (log2 d + 1)).
std::uint64_t pair_repetitions(const TesterConfig& cfg, int d);
/// ceil(budget · d/ε).
std::uint64_t edge_repetitions(const TesterConfig& cfg, int d);

/// Nonadaptive one-sided pair tester over all (b, τ) settings.
TesterReport pair_tester(CountingOracle& oracle, const TesterConfig& cfg);

/// Uniform random hypercube edges; rejects on a violated one.
TesterReport edge_tester(CountingOracle& oracle, const TesterConfig& cfg);

/// One draw from D_pair(0, 1).
TesterReport single_draw_tester(CountingOracle& oracle, const TesterConfig& cfg);

enum class TesterKind { pair, edge, single_draw };
const char* to_string(TesterKind k);

struct RejectionEstimate {
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  double rate = 0;
  double wilson_low = 0;
  double wilson_high = 0;
  double mean_queries = 0;
};

/// Wilson score interval at z = 1.96.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Trial t runs with seed derive_seed(seed, t); results do not depend on `jobs`.
RejectionEstimate measure_rejection(const ValuedFunction& f, TesterKind kind, const TesterConfig& cfg,
                                    std::uint64_t trials, std::uint64_t seed, int jobs = 1);

nlohmann::ordered_json report_to_json(const TesterReport& rep);

}  // namespace rvmono
