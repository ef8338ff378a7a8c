#include "rvmono/function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "rvmono/random.hpp"

namespace rvmono {

using nlohmann::json;

ValuedFunction::ValuedFunction(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (!domain_) throw Error(ErrorCode::invalid_argument, "function needs a domain");
  if (values_.size() != domain_->size())
    throw Error(ErrorCode::length_mismatch,
                "expected " + std::to_string(domain_->size()) + " values, got " +
                    std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_argument, "function values must be finite");
}

namespace {

std::vector<double> sorted_distinct(std::span<const double> vs) {
  std::vector<double> d(vs.begin(), vs.end());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

}  // namespace

std::size_t image_size(const ValuedFunction& f) { return sorted_distinct(f.values()).size(); }

std::vector<std::int64_t> rank_values(const ValuedFunction& f) {
  const auto distinct = sorted_distinct(f.values());
  std::vector<std::int64_t> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x)
    out[x] = std::lower_bound(distinct.begin(), distinct.end(), f(static_cast<Vertex>(x))) -
             distinct.begin() + 1;
  return out;
}

ValuedFunction canonical_rank(const ValuedFunction& f) {
  const auto ranks = rank_values(f);
  return ValuedFunction(f.domain_ptr(), std::vector<double>(ranks.begin(), ranks.end()));
}

ValuedFunction threshold(const ValuedFunction& f, double t) {
  std::vector<double> h(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) h[x] = f(static_cast<Vertex>(x)) > t ? 1.0 : 0.0;
  return ValuedFunction(f.domain_ptr(), std::move(h));
}

ValuedFunction random_function(DomainPtr domain, int r, std::uint64_t seed) {
  if (r < 1) throw Error(ErrorCode::invalid_argument, "image size r must be >= 1");
  Rng rng = make_rng(seed);
  std::vector<double> vs(domain->size());
  for (double& v : vs) v = static_cast<double>(uniform_int(rng, 1, r));
  return ValuedFunction(std::move(domain), std::move(vs));
}

ValuedFunction random_monotone(DomainPtr domain, int r, std::uint64_t seed) {
  const ValuedFunction base = random_function(domain, r, seed);
  std::vector<double> g(base.values().begin(), base.values().end());
  for (Vertex x : domain->topological_order())
    domain->for_each_predecessor(x, [&](Vertex p) { g[x] = std::max(g[x], g[p]); });
  return ValuedFunction(std::move(domain), std::move(g));
}

ValuedFunction anti_dictator(DomainPtr domain) {
  if (!domain->is_hypercube()) throw Error(ErrorCode::invalid_argument, "anti-dictator needs a hypercube");
  std::vector<double> vs(domain->size());
  for (Vertex x = 0; x < vs.size(); ++x) vs[x] = 1.0 - static_cast<double>(x & 1U);
  return ValuedFunction(std::move(domain), std::move(vs));
}

ValuedFunction weight_function(DomainPtr domain) {
  if (!domain->is_hypercube()) throw Error(ErrorCode::invalid_argument, "weight function needs a hypercube");
  std::vector<double> vs(domain->size());
  for (Vertex x = 0; x < vs.size(); ++x) vs[x] = popcount(x);
  return ValuedFunction(std::move(domain), std::move(vs));
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::malformed_file, what); }

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) malformed(std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

}  // namespace

DomainPtr domain_from_json(const json& j) {
  if (!j.is_object()) malformed("domain must be a JSON object");
  if (j.contains("d")) return make_hypercube(get_int(j, "d"));
  const int n = get_int(j, "n");
  if (n < 1) malformed("DAG vertex count must be positive");
  if (!j.contains("edges") || !j.at("edges").is_array()) malformed("DAG needs an 'edges' array");
  std::vector<Edge> edges;
  for (const json& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      malformed("each edge must be a [u, v] integer pair");
    const auto u = e[0].get<long long>();
    const auto v = e[1].get<long long>();
    if (u < 0 || v < 0)
      throw Error(ErrorCode::vertex_out_of_range, "negative vertex id in edge list");
    edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return std::make_shared<const Poset>(Poset::dag(static_cast<std::size_t>(n), edges));
}

json domain_to_json(const Poset& domain) {
  json j = json::object();
  if (domain.is_hypercube()) {
    j["d"] = domain.dimension();
    return j;
  }
  j["n"] = domain.size();
  json edges = json::array();
  domain.for_each_edge([&](Edge e) { edges.push_back({e.lower, e.upper}); });
  j["edges"] = std::move(edges);
  return j;
}

DomainPtr read_domain(const std::filesystem::path& path) { return domain_from_json(parse_file(path)); }

ValuedFunction function_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) malformed("function file must be a JSON object");
  DomainPtr domain;
  if (j.contains("d")) {
    domain = make_hypercube(get_int(j, "d"));
  } else if (j.contains("domain")) {
    const json& dj = j.at("domain");
    if (dj.is_string()) {
      std::filesystem::path p = dj.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      domain = read_domain(p);
    } else {
      domain = domain_from_json(dj);
    }
  } else {
    malformed("function file needs 'd' or 'domain'");
  }
  if (!j.contains("values") || !j.at("values").is_array()) malformed("function file needs a 'values' array");
  std::vector<double> vs;
  vs.reserve(j.at("values").size());
  for (const json& v : j.at("values")) {
    if (!v.is_number()) malformed("non-numeric entry in 'values'");
    vs.push_back(v.get<double>());
  }
  if (vs.size() != domain->size())
    throw Error(ErrorCode::length_mismatch,
                "domain has " + std::to_string(domain->size()) + " vertices but file lists " +
                    std::to_string(vs.size()) + " values");
  return ValuedFunction(std::move(domain), std::move(vs));
}

ValuedFunction read_function(const std::filesystem::path& path) {
  return function_from_json(parse_file(path), path.parent_path());
}

json function_to_json(const ValuedFunction& f, const std::filesystem::path& dag_file) {
  json j = json::object();
  if (f.domain().is_hypercube()) {
    j["d"] = f.domain().dimension();
  } else if (!dag_file.empty()) {
    j["domain"] = dag_file.string();
  } else {
    j["domain"] = domain_to_json(f.domain());
  }
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j;
}

void write_function(const ValuedFunction& f, const std::filesystem::path& path,
                    const std::filesystem::path& dag_file) {
  const json j = function_to_json(f, dag_file);
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::malformed_file, "cannot write " + path.string());
  out << j.dump() << '\n';
}

}  // namespace rvmono
