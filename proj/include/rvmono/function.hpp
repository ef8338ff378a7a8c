#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "rvmono/poset.hpp"

namespace rvmono {

using DomainPtr = std::shared_ptr<const Poset>;

inline DomainPtr make_hypercube(int d) { return std::make_shared<const Poset>(Poset::hypercube(d)); }

/// Total, finite real-valued assignment on the vertices of a domain.
class ValuedFunction {
 public:
  /// Throws Error{length_mismatch} or Error{invalid_argument} (non-finite value).
  ValuedFunction(DomainPtr domain, std::vector<double> values);

  const Poset& domain() const noexcept { return *domain_; }
  const DomainPtr& domain_ptr() const noexcept { return domain_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator()(Vertex x) const { return values_[x]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const ValuedFunction& a, const ValuedFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  DomainPtr domain_;
  std::vector<double> values_;
};

/// Number of distinct values r.
std::size_t image_size(const ValuedFunction& f);

/// Order-isomorphic relabeling onto [r] (1 = smallest value).
ValuedFunction canonical_rank(const ValuedFunction& f);

/// Integer ranks as a plain vector; ranks[x] ∈ [1, r].
std::vector<std::int64_t> rank_values(const ValuedFunction& f);

/// Boolean h_t with h_t(x) = 1 iff f(x) > t.
ValuedFunction threshold(const ValuedFunction& f, double t);

/// i.i.d. uniform values in [r].
ValuedFunction random_function(DomainPtr domain, int r, std::uint64_t seed);

/// Max-closure g(x) = max_{y ⪯ x} base(y) of i.i.d. uniform base values in [r].
ValuedFunction random_monotone(DomainPtr domain, int r, std::uint64_t seed);

/// f(x) = 1 - x_1 on a hypercube.
ValuedFunction anti_dictator(DomainPtr domain);
/// f(x) = |x| on a hypercube.
ValuedFunction weight_function(DomainPtr domain);

/// Value oracle that counts lookups. Not thread-safe: give each worker its
/// own oracle and sum the counters.
class CountingOracle {
 public:
  explicit CountingOracle(const ValuedFunction& f, bool record_queries = false)
      : f_(&f), record_(record_queries) {}
  CountingOracle(ValuedFunction&&, bool = false) = delete;

  double query(Vertex x) {
    ++count_;
    if (record_) log_.push_back(x);
    return (*f_)(x);
  }

  std::uint64_t query_count() const noexcept { return count_; }
  const std::vector<Vertex>& query_log() const noexcept { return log_; }
  void reset() {
    count_ = 0;
    log_.clear();
  }

  const ValuedFunction& function() const noexcept { return *f_; }
  const Poset& domain() const noexcept { return f_->domain(); }

 private:
  const ValuedFunction* f_;
  bool record_;
  std::uint64_t count_ = 0;
  std::vector<Vertex> log_;
};

// File formats:
//   domain:   {"d": <int>}  or  {"n": <int>, "edges": [[u, v], ...]}
//   function: {"d": <int>, "values": [...]}
//             {"domain": "<dag-file>", "values": [...]}   (path relative to the function file)

DomainPtr domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const Poset& domain);
DomainPtr read_domain(const std::filesystem::path& path);

/// Throws Error{malformed_file} or Error{length_mismatch}.
ValuedFunction read_function(const std::filesystem::path& path);
/// DAG domains are embedded inline unless `dag_file` names a domain file to reference.
nlohmann::json function_to_json(const ValuedFunction& f, const std::filesystem::path& dag_file = {});
/// Same layout as function_to_json.
void write_function(const ValuedFunction& f, const std::filesystem::path& path,
                    const std::filesystem::path& dag_file = {});
ValuedFunction function_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

}  // namespace rvmono
