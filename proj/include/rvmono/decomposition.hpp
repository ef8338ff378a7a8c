#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvmono/exact.hpp"
#include "rvmono/isoperimetry.hpp"
#include "rvmono/sweeping.hpp"

namespace rvmono {

/// Pairs (s, t) with s ≺ t; no vertex occurs twice.
struct Matching {
  std::vector<Edge> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  std::vector<Vertex> lower() const;
  std::vector<Vertex> upper() const;
};

/// Throws Error{invalid_argument} on a repeated vertex or a non-comparable pair.
void validate_matching(const Poset& domain, const Matching& m);

/// One block (S_i, T_i) together with the matching pairs that produced it.
struct Block {
  std::vector<Vertex> sources;       // S_i, ascending
  std::vector<Vertex> sinks;         // T_i, ascending
  std::vector<std::size_t> pairs;    // indices into Matching::pairs
};

using PairPartition = std::vector<Block>;

struct MatchingLimits {
  std::size_t vertex_cap = 256;
};

/// Maximum Σ (f(s) - f(t)) over matchings of TC(G), then minimum size, computed
/// on canonical ranks with weights (N+1)·Δrank - 1. Throws Error{size_cap_exceeded}.
Matching max_weight_min_card_matching(const ValuedFunction& f, const MatchingLimits& limits = {});

/// Σ (f(s) - f(t)) over the pairs.
double matching_weight(const ValuedFunction& f, const Matching& m);

/// V(H(X,Y)) ∩ V(H(X',Y')) ≠ ∅. The four sets must be pairwise disjoint.
bool conflict(const Poset& domain, const std::vector<Vertex>& x, const std::vector<Vertex>& y,
              const std::vector<Vertex>& x2, const std::vector<Vertex>& y2);

/// Starts from singleton blocks in pair order and repeatedly merges the first
/// conflicting pair (i < j) into i, rescanning after every merge.
PairPartition merge_pairs(const Poset& domain, const Matching& m);

struct Component {
  Block block;
  SweepingGraph graph;
  ValuedFunction fi;
};

std::vector<Component> build_components(const ValuedFunction& f, const Matching& m, const PairPartition& blocks);

/// Boolean f_i for a single sweeping graph and its sink set.
ValuedFunction component_function(const ValuedFunction& f, const SweepingGraph& h);

struct DecompositionCertificate {
  bool monotone_input = false;

  bool sum_bound = false;          // 2 Σ ε(f_i) >= ε(f)
  bool edges_inside = false;       // S_{f_i}^- ⊆ S_f^- ∩ E(H_i)
  bool disjoint = false;           // V(H_i) pairwise disjoint
  bool matchings_violated = false; // M_i violates f_i and ε(f_i) >= |M_i| / N
  bool strict_drop = false;        // x ≺ y in S_i × T_i implies f(x) > f(y)

  Rational epsilon_f;
  Rational epsilon_sum;
  std::vector<Rational> epsilon_i;
  std::vector<std::size_t> violated_i;  // |S_{f_i}^-|
  std::size_t violated_f = 0;           // |S_f^-|
  bool matching_size_bound = false;     // |M| >= ε(f)·N / 2

  // First failure per check, human readable.
  std::vector<std::string> witnesses;

  bool ok() const { return sum_bound && edges_inside && disjoint && matchings_violated && strict_drop; }
};

struct Decomposition {
  bool monotone = false;
  Matching matching;
  std::vector<Component> components;
  DecompositionCertificate certificate;

  std::size_t k() const { return components.size(); }
};

struct DecomposeOptions {
  MatchingLimits matching;
  ExactLimits exact;
  bool verify = true;
};

Decomposition decompose(const ValuedFunction& f, const DecomposeOptions& opts = {});

/// Recomputes every check from the matching, blocks, H_i and f_i stored in `d`.
DecompositionCertificate verify_decomposition(const ValuedFunction& f, const Decomposition& d,
                                              const ExactLimits& limits = {});

struct ChainCheck {
  double values[4] = {0, 0, 0, 0};
  bool first_ge = false;    // value 1 >= value 2
  bool middle_eq = false;   // |value 2 - value 3| <= 1e-12
  bool last_ge = false;     // value 3 >= value 4
  bool half_epsilon = false;  // Σ ε(f_i) >= ε(f)/2, exact
  std::optional<int> failing_step;  // 1, 2 or 3
  bool ok() const { return first_ge && middle_eq && last_ge && half_epsilon; }
};

ChainCheck robust_chain_check(const ValuedFunction& f, const EdgeColoring& col, const Decomposition& d);

struct EdgeBound {
  std::size_t violated_edges = 0;
  std::size_t cover = 0;
  bool half_bound = false;    // |S_f^-| >= ε(f)·2^{d-1}
  bool full_bound = false;    // |S_f^-| >= ε(f)·2^d
};
EdgeBound edge_bound_check(const ValuedFunction& f, const ExactLimits& limits = {});

nlohmann::ordered_json decomposition_to_json(const Decomposition& d);

}  // namespace rvmono
