#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include "rvmono/function.hpp"

namespace rvmono {

using Rational = boost::rational<std::int64_t>;

/// S_f^- with the per-vertex counts derived from it.
struct ViolationProfile {
  std::vector<Edge> violated_edges;   // in domain edge enumeration order
  std::vector<int> out_counts;        // I_f^-(x): outgoing violated edges
  std::vector<int> total_degree;      // U_f^-(x): violated edges at x, either direction
  std::vector<int> undirected_counts; // I_f(x): influential edges owned by the larger endpoint
  std::size_t influential_edges = 0;
};

ViolationProfile violation_profile(const ValuedFunction& f);

/// Violated-edge test for a domain edge (lower, upper).
inline bool is_violated(const ValuedFunction& f, Edge e) { return f(e.lower) > f(e.upper); }

enum class Color : std::uint8_t { red, blue };
using EdgeColoring = std::map<Edge, Color>;

EdgeColoring uniform_coloring(std::span<const Edge> edges, Color c);
EdgeColoring random_coloring(std::span<const Edge> edges, std::uint64_t seed);

/// Red edges counted at their lower endpoint, blue at their upper endpoint.
struct ColoredCounts {
  std::vector<int> red_out;
  std::vector<int> blue_in;
};

/// Throws Error{invalid_coloring} unless `col` colors exactly the edges of S_f^-.
ColoredCounts colored_counts(const ValuedFunction& f, const ViolationProfile& profile,
                             const EdgeColoring& col);

/// (1/N) Σ_x sqrt(counts[x]) with pairwise summation in vertex order.
double sqrt_mean(std::span<const int> counts);

double directed_objective(const ValuedFunction& f);
double robust_objective(const ValuedFunction& f, const EdgeColoring& col);
double undirected_objective(const ValuedFunction& f);

/// 1 - max_t Pr[f = t].
Rational dist_to_const_exact(const ValuedFunction& f);
double dist_to_const(const ValuedFunction& f);

// ---------------------------------------------------------------------------
// (K, Δ)-good bipartite graphs

enum class GoodGraphStatus { left_good, right_good, both, neither };
const char* to_string(GoodGraphStatus s);

/// Edges must run from A to B; otherwise throws Error{invalid_argument}.
GoodGraphStatus check_good_graph(std::span<const Vertex> a, std::span<const Vertex> b,
                                 std::span<const Edge> edges, std::size_t k, std::size_t delta);

// ---------------------------------------------------------------------------
// τ-persistence on the hypercube

enum class Direction { right, left };

struct PersistenceMode {
  enum class Kind { exact, monte_carlo, automatic } kind = Kind::exact;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  std::uint64_t enumeration_cap = 1'000'000;

  static PersistenceMode exact() { return {}; }
  static PersistenceMode monte_carlo(std::uint64_t samples, std::uint64_t seed) {
    return {Kind::monte_carlo, samples, seed};
  }
};

struct PersistenceEstimate {
  std::uint64_t favorable = 0;
  std::uint64_t total = 0;
  bool exact = true;
  double probability() const { return total == 0 ? 1.0 : static_cast<double>(favorable) / total; }
  double standard_error() const;
};

/// Probability over a uniform τ-subset T of the free coordinates (x_i = 0 for
/// right, x_i = 1 for left) that the flipped point y has f(y) <= f(x) (right)
/// or f(y) >= f(x) (left). When τ exceeds the number of free coordinates the
/// draw is y = x and the probability is 1.
PersistenceEstimate persistence_probability(const ValuedFunction& f, Vertex x, int tau,
                                            Direction dir, const PersistenceMode& mode = {});

/// Probability strictly above 9/10, decided on exact counts.
bool is_persistent(const ValuedFunction& f, Vertex x, int tau, Direction dir,
                   const PersistenceMode& mode = {});

/// |x| within d/2 ± band_constant·sqrt(d ln d).
bool in_weight_band(Vertex x, int d, double band_constant = 2.0);

struct PersistenceCheckReport {
  int tau = 0;
  int image_size = 0;
  bool iff_holds = true;
  std::optional<Vertex> iff_witness;
  std::uint64_t nonpersistent_f = 0;
  std::vector<std::uint64_t> nonpersistent_threshold;  // index t for h_t, t ∈ [0, r]
  bool union_bound_holds = true;
  bool top_threshold_all_persistent = true;  // h_r (right) or h_0 (left)
  bool ok() const { return iff_holds && union_bound_holds && top_threshold_all_persistent; }
};

/// Checks, for every vertex, persistence for f ⇔ persistence for h_{f(x)}
/// (right) or h_{f(x)-1} (left) on canonical ranks, and the union bound over
/// thresholds t ∈ [r-1].
PersistenceCheckReport persistence_decomposition_check(const ValuedFunction& f, int tau,
                                                       Direction dir = Direction::right,
                                                       std::uint64_t enumeration_cap = 1'000'000);

/// Keys: I_minus, U_minus, I_undirected, objective_directed,
/// objective_robust (when a coloring is given), objective_undirected, dist_const.
nlohmann::ordered_json profile_to_json(const ValuedFunction& f, const EdgeColoring* col = nullptr);

}  // namespace rvmono
