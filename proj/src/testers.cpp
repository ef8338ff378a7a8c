#include "rvmono/testers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace rvmono {

const char* to_string(Verdict v) { return v == Verdict::accept ? "accept" : "reject"; }

const char* to_string(TesterKind k) {
  switch (k) {
    case TesterKind::pair: return "pair";
    case TesterKind::edge: return "edge";
    case TesterKind::single_draw: return "single-draw";
  }
  return "?";
}

void TesterConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in (0,1)");
  if (r < 1) throw Error(ErrorCode::invalid_argument, "image size r must be >= 1");
  if (!(budget_constant > 0.0)) throw Error(ErrorCode::invalid_argument, "budget constant must be positive");
}

namespace {

int hypercube_dimension(const CountingOracle& oracle) {
  if (!oracle.domain().is_hypercube()) throw Error(ErrorCode::invalid_argument, "testers run on hypercube domains");
  return oracle.domain().dimension();
}

}  // namespace

std::pair<Vertex, Vertex> sample_pair(int b, int tau, int d, Rng& rng) {
  if (tau < 1) throw Error(ErrorCode::invalid_argument, "tau must be >= 1");
  const Vertex full = d >= 32 ? ~Vertex{0} : (Vertex{1} << d) - 1;
  const Vertex x = uniform_int<Vertex>(rng, 0, full);
  int free[32];
  int count = 0;
  for (int i = 0; i < d; ++i)
    if (static_cast<int>((x >> i) & 1U) == b) free[count++] = i;
  if (tau > count) return {x, x};
  Vertex y = x;
  for (int k = 0; k < tau; ++k) {
    const int j = uniform_int(rng, k, count - 1);
    std::swap(free[k], free[j]);
    y ^= Vertex{1} << free[k];
  }
  return {x, y};
}

std::vector<int> tau_schedule(int d) {
  if (d <= 2) return {1};
  const double bound = std::sqrt(d / std::log2(static_cast<double>(d)));
  std::vector<int> taus{1};
  while (2.0 * taus.back() <= bound) taus.push_back(2 * taus.back());
  return taus;
}

std::uint64_t pair_repetitions(const TesterConfig& cfg, int d) {
  if (cfg.repetitions) return *cfg.repetitions;
  const double sd = std::sqrt(static_cast<double>(d));
  const double base = std::min(cfg.r * sd / (cfg.epsilon * cfg.epsilon), d / cfg.epsilon);
  const double log_factor = std::log2(static_cast<double>(std::max(d, 1))) + 1.0;
  return static_cast<std::uint64_t>(std::ceil(cfg.budget_constant * base * log_factor));
}

std::uint64_t edge_repetitions(const TesterConfig& cfg, int d) {
  if (cfg.repetitions) return *cfg.repetitions;
  return static_cast<std::uint64_t>(std::ceil(cfg.budget_constant * d / cfg.epsilon));
}

namespace {

// One pair draw; returns true on a violation and fills the witness.
bool probe(CountingOracle& oracle, Vertex x, Vertex y, std::optional<Witness>& witness) {
  if (x == y) {
    oracle.query(x);
    return false;
  }
  const double fx = oracle.query(x);
  const double fy = oracle.query(y);
  // x and y are comparable; orient as lower ≺ upper.
  const bool x_low = (x & y) == x;
  const Vertex lo = x_low ? x : y, hi = x_low ? y : x;
  const double flo = x_low ? fx : fy, fhi = x_low ? fy : fx;
  if (!(flo > fhi)) return false;
  if (!witness) witness = Witness{lo, hi, flo, fhi};
  return true;
}

}  // namespace

TesterReport pair_tester(CountingOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  const int d = hypercube_dimension(oracle);
  const std::uint64_t start = oracle.query_count();
  TesterReport rep;
  rep.repetitions = pair_repetitions(cfg, d);
  Rng rng = make_rng(cfg.seed);
  bool done = false;
  for (int b = 0; b <= 1 && !done; ++b) {
    for (int tau : tau_schedule(d)) {
      SettingStats st{b, tau, 0, 0};
      for (std::uint64_t k = 0; k < rep.repetitions; ++k) {
        const auto [x, y] = sample_pair(b, tau, d, rng);
        ++st.draws;
        if (probe(oracle, x, y, rep.witness)) {
          ++st.violations;
          if (cfg.early_exit) {
            done = true;
            break;
          }
        }
      }
      rep.per_setting.push_back(st);
      if (done) break;
    }
  }
  rep.verdict = rep.witness ? Verdict::reject : Verdict::accept;
  rep.queries = oracle.query_count() - start;
  return rep;
}

TesterReport edge_tester(CountingOracle& oracle, const TesterConfig& cfg) {
  cfg.validate();
  const int d = hypercube_dimension(oracle);
  const std::uint64_t start = oracle.query_count();
  TesterReport rep;
  rep.repetitions = edge_repetitions(cfg, d);
  Rng rng = make_rng(cfg.seed);
  const Vertex full = (Vertex{1} << d) - 1;
  SettingStats st{0, 1, 0, 0};
  for (std::uint64_t k = 0; k < rep.repetitions; ++k) {
    const Vertex x = uniform_int<Vertex>(rng, 0, full);
    const int i = uniform_int(rng, 0, d - 1);
    const Vertex lo = x & ~(Vertex{1} << i), hi = x | (Vertex{1} << i);
    ++st.draws;
    if (probe(oracle, lo, hi, rep.witness)) {
      ++st.violations;
      if (cfg.early_exit) break;
    }
  }
  rep.per_setting.push_back(st);
  rep.verdict = rep.witness ? Verdict::reject : Verdict::accept;
  rep.queries = oracle.query_count() - start;
  return rep;
}

TesterReport single_draw_tester(CountingOracle& oracle, const TesterConfig& cfg) {
  const int d = hypercube_dimension(oracle);
  const std::uint64_t start = oracle.query_count();
  TesterReport rep;
  rep.repetitions = 1;
  Rng rng = make_rng(cfg.seed);
  const auto [x, y] = sample_pair(0, 1, d, rng);
  SettingStats st{0, 1, 1, 0};
  if (probe(oracle, x, y, rep.witness)) st.violations = 1;
  rep.per_setting.push_back(st);
  rep.verdict = rep.witness ? Verdict::reject : Verdict::accept;
  rep.queries = oracle.query_count() - start;
  return rep;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

RejectionEstimate measure_rejection(const ValuedFunction& f, TesterKind kind, const TesterConfig& cfg,
                                    std::uint64_t trials, std::uint64_t seed, int jobs) {
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be >= 1");
  std::vector<std::uint8_t> rejected(trials, 0);
  std::vector<std::uint64_t> queries(trials, 0);
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      CountingOracle oracle(f);
      TesterConfig c = cfg;
      c.seed = derive_seed(seed, t);
      TesterReport rep = kind == TesterKind::pair   ? pair_tester(oracle, c)
                         : kind == TesterKind::edge ? edge_tester(oracle, c)
                                                    : single_draw_tester(oracle, c);
      rejected[t] = rep.verdict == Verdict::reject;
      queries[t] = rep.queries;
    }
  };
  const auto workers = static_cast<std::uint64_t>(std::clamp(jobs, 1, 256));
  if (workers == 1) {
    run(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t b = w * chunk, e = std::min(trials, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
    for (auto& th : pool) th.join();
  }
  RejectionEstimate est;
  est.trials = trials;
  est.rejections = static_cast<std::uint64_t>(std::count(rejected.begin(), rejected.end(), 1));
  est.rate = static_cast<double>(est.rejections) / static_cast<double>(trials);
  std::tie(est.wilson_low, est.wilson_high) = wilson_interval(est.rejections, trials);
  est.mean_queries = static_cast<double>(std::accumulate(queries.begin(), queries.end(), std::uint64_t{0})) /
                     static_cast<double>(trials);
  return est;
}

nlohmann::ordered_json report_to_json(const TesterReport& rep) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(rep.verdict);
  j["queries"] = rep.queries;
  j["repetitions_per_setting"] = rep.repetitions;
  if (rep.witness) {
    j["witness"] = {{"lower", rep.witness->lower},
                    {"upper", rep.witness->upper},
                    {"f_lower", rep.witness->f_lower},
                    {"f_upper", rep.witness->f_upper}};
  } else {
    j["witness"] = nullptr;
  }
  auto settings = nlohmann::ordered_json::array();
  for (const auto& s : rep.per_setting)
    settings.push_back({{"b", s.b}, {"tau", s.tau}, {"draws", s.draws}, {"violations", s.violations}});
  j["per_setting"] = std::move(settings);
  return j;
}

}  // namespace rvmono
