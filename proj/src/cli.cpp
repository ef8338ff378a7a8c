#include "rvmono/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "rvmono/decomposition.hpp"
#include "rvmono/dist_approx.hpp"
#include "rvmono/exact.hpp"
#include "rvmono/hard_instances.hpp"
#include "rvmono/random.hpp"
#include "rvmono/testers.hpp"

namespace rvmono::cli {

using ojson = nlohmann::ordered_json;

namespace {

std::string fraction(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) s += sep;
    s += parts[k];
  }
  return s;
}

// Runs body(k) for k in [0, n) over `jobs` threads with static chunks.
template <typename Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || n < 2) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk, e = std::min(n, b + chunk);
    if (b < e)
      pool.emplace_back([&body, b, e] {
        for (std::size_t k = b; k < e; ++k) body(k);
      });
  }
  for (auto& t : pool) t.join();
}

struct CheckOutcome {
  std::string name;
  enum class Status { pass, fail, vacuous } status = Status::pass;
  std::string witness;
};

const char* status_name(CheckOutcome::Status s) {
  switch (s) {
    case CheckOutcome::Status::pass: return "pass";
    case CheckOutcome::Status::fail: return "fail";
    case CheckOutcome::Status::vacuous: return "vacuous";
  }
  return "?";
}

struct InstanceOutcome {
  std::uint64_t seed = 0;
  ojson row;
  std::vector<CheckOutcome> checks;
  bool failed() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckOutcome& c) { return c.status == CheckOutcome::Status::fail; });
  }
};

CoordinateSet coordinates(unsigned mask, int d) {
  CoordinateSet s;
  for (int i = 1; i <= d; ++i)
    if (mask >> (i - 1) & 1U) s.push_back(i);
  return s;
}

InstanceOutcome check_instance(const SuiteConfig& cfg, std::size_t index) {
  InstanceOutcome out;
  out.seed = derive_seed(cfg.seed, index);
  const auto dom = make_hypercube(cfg.d);
  const ValuedFunction f =
      cfg.family == "monotone" ? random_monotone(dom, cfg.r, out.seed) : random_function(dom, cfg.r, out.seed);
  using S = CheckOutcome::Status;
  auto add = [&](const char* name, bool ok, std::string witness = {}) {
    out.checks.push_back({name, ok ? S::pass : S::fail, ok ? std::string{} : std::move(witness)});
  };
  auto vacuous = [&](const char* name) { out.checks.push_back({name, S::vacuous, {}}); };

  const auto cert = exact_distance(f);
  const auto chk = check_certificate(f, cert);
  {
    std::string w;
    if (chk.uncovered) w = "uncovered pair (" + std::to_string(chk.uncovered->lower) + "," +
                           std::to_string(chk.uncovered->upper) + ")";
    else if (!chk.repaired_monotone) w = "repaired function not monotone";
    else if (!chk.hamming_matches) w = "hamming " + std::to_string(chk.hamming) + " != cover " +
                                       std::to_string(cert.cover.size());
    add("certificate", chk.ok(), w);
  }

  const auto profile = violation_profile(f);
  std::size_t k = 0;
  if (cert.epsilon == Rational(0)) {
    vacuous("decomposition");
    vacuous("chain");
  } else {
    Decomposition dec = decompose(f);
    if (cfg.inject_corruption && !dec.components.empty()) {
      auto& c = dec.components.front();
      std::vector<double> v(c.fi.values().begin(), c.fi.values().end());
      const Vertex s = c.block.sources.front();
      v[s] = 1.0 - v[s];
      c.fi = ValuedFunction(f.domain_ptr(), std::move(v));
      dec.certificate = verify_decomposition(f, dec);
    }
    k = dec.k();
    add("decomposition", dec.certificate.ok(), join(dec.certificate.witnesses, "; "));
    std::vector<std::string> bad;
    for (int c = 0; c < cfg.colorings; ++c) {
      const EdgeColoring col = c == 0 ? uniform_coloring(profile.violated_edges, Color::red)
                                      : random_coloring(profile.violated_edges, derive_seed(out.seed, c));
      const auto ch = robust_chain_check(f, col, dec);
      if (!ch.ok()) {
        std::ostringstream w;
        w << "coloring " << c << ": step " << ch.failing_step.value_or(0) << " values " << ch.values[0] << ' '
          << ch.values[1] << ' ' << ch.values[2] << ' ' << ch.values[3];
        bad.push_back(w.str());
      }
    }
    add("chain", bad.empty(), join(bad, "; "));
  }

  const std::size_t n = f.size();
  const std::size_t violated = profile.violated_edges.size();
  const std::size_t cover = cert.cover.size();
  add("edge_bound", violated >= cover,
      std::to_string(violated) + " violated edges < cover " + std::to_string(cover));

  const double und = undirected_objective(f);
  const double dc = dist_to_const(f);
  add("undirected", und >= dc / (2.0 * std::sqrt(2.0)),
      "objective " + std::to_string(und) + " < " + std::to_string(dc / (2.0 * std::sqrt(2.0))));

  const auto med = median_threshold(f);
  double p0 = 0;
  for (double v : med.h.values()) p0 += v == 0.0;
  p0 /= static_cast<double>(n);
  const double hu = undirected_objective(med.h);
  add("boolean_undirected", hu >= std::sqrt(2.0) * p0 * (1 - p0),
      "objective " + std::to_string(hu) + " < " + std::to_string(std::sqrt(2.0) * p0 * (1 - p0)));
  {
    const auto ph = violation_profile(med.h);
    std::string w;
    for (Vertex x = 0; x < n && w.empty(); ++x)
      if (ph.undirected_counts[x] > profile.undirected_counts[x]) w = "I_h > I_f at " + std::to_string(x);
    if (w.empty() && 2 * dist_to_const_exact(med.h) < dist_to_const_exact(f))
      w = "dist(h,const) " + fraction(dist_to_const_exact(med.h)) + " < half of " + fraction(dist_to_const_exact(f));
    add("median", w.empty(), w);
  }

  {
    std::string w;
    const Rational frac(static_cast<std::int64_t>(violated), static_cast<std::int64_t>(cfg.d) << (cfg.d - 1));
    if (frac > 2 * cert.epsilon) w = "violated fraction " + fraction(frac) + " > 2 eps";
    const unsigned full = (1U << cfg.d) - 1;
    Rng rng = make_rng(derive_seed(out.seed, 1000));
    const int sets = cfg.d <= 4 ? static_cast<int>(full) + 1 : 32;
    for (int t = 0; t < sets && w.empty(); ++t) {
      const unsigned mask = cfg.d <= 4 ? static_cast<unsigned>(t) : uniform_int<unsigned>(rng, 0, full);
      const auto mu = mu_exact(f, coordinates(mask, cfg.d));
      if (mu > 2 * cert.epsilon) w = "mu(S=" + std::to_string(mask) + ") = " + fraction(mu) + " > 2 eps";
    }
    add("lb_on_dist", w.empty(), w);
  }

  out.row["index"] = index;
  out.row["seed"] = out.seed;
  out.row["epsilon"] = fraction(cert.epsilon);
  out.row["violated_edges"] = violated;
  out.row["k"] = k;
  for (const auto& c : out.checks) out.row[c.name] = status_name(c.status);
  return out;
}

}  // namespace

SuiteResult verify_inequalities(const SuiteConfig& cfg) {
  if (cfg.d < 1 || cfg.d > 8) throw Error(ErrorCode::invalid_argument, "suite dimension must lie in [1, 8]");
  if (cfg.r < 1) throw Error(ErrorCode::invalid_argument, "r must be >= 1");
  if (cfg.family != "random" && cfg.family != "monotone")
    throw Error(ErrorCode::invalid_argument, "family must be random or monotone");
  std::vector<InstanceOutcome> outcomes(cfg.count);
  parallel_for(cfg.count, cfg.jobs, [&](std::size_t k) { outcomes[k] = check_instance(cfg, k); });

  SuiteResult res;
  res.instances = cfg.count;
  res.failures = ojson::array();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& o = outcomes[k];
    if (o.failed()) ++res.failed_instances;
    for (const auto& c : o.checks) {
      auto& slot = res.checks[c.name];
      if (slot.is_null()) slot = {{"pass", 0}, {"fail", 0}, {"vacuous", 0}};
      slot[status_name(c.status)] = slot[status_name(c.status)].get<int>() + 1;
      if (c.status == CheckOutcome::Status::fail)
        res.failures.push_back({{"index", k}, {"seed", o.seed}, {"check", c.name}, {"witness", c.witness}});
    }
    res.rows.push_back(o.row);
  }
  return res;
}

std::string to_csv(const std::vector<ojson>& rows) {
  std::ostringstream s;
  if (rows.empty()) return {};
  auto cell = [](const ojson& v) {
    std::string t = v.is_string() ? v.get<std::string>() : v.dump();
    if (t.find_first_of(",\"\n") == std::string::npos) return t;
    std::string q = "\"";
    for (char ch : t) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  bool first = true;
  for (const auto& [key, _] : rows.front().items()) {
    s << (first ? "" : ",") << key;
    first = false;
  }
  s << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [key, _] : rows.front().items()) {
      s << (first ? "" : ",") << (row.contains(key) ? cell(row.at(key)) : std::string{});
      first = false;
    }
    s << '\n';
  }
  return s.str();
}

namespace {

struct Common {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string format = "json";
  std::string csv;
  bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  sub->add_option("--out", c.out, "output file (stdout when omitted)");
  sub->add_option("--format", c.format, "main output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--csv", c.csv, "also write the CSV summary here");
  sub->add_flag("--timing", c.timing, "record wall-clock seconds in the report");
}

struct Output {
  ojson report;
  std::vector<ojson> rows;
  int exit_code = 0;
};

ojson envelope(const std::string& command, const Common& c, ojson config) {
  ojson j;
  j["tool"] = "rvmono";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = c.seed;
  j["config"] = std::move(config);
  return j;
}

void flatten(const ojson& j, const std::string& prefix, ojson& row) {
  for (const auto& [key, v] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (v.is_object()) flatten(v, name, row);
    else if (!v.is_array()) row[name] = v;
  }
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::malformed_file, "cannot write " + path);
  f << text;
}

void emit(const Common& c, Output& o, std::ostream& out) {
  if (o.rows.empty()) {
    ojson row;
    flatten(o.report, "", row);
    o.rows.push_back(std::move(row));
  }
  const std::string json_text = o.report.dump(2) + "\n";
  write_text(c.out, c.format == "json" ? json_text : to_csv(o.rows), out);
  if (!c.csv.empty()) write_text(c.csv, to_csv(o.rows), out);
}

ValuedFunction load(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::invalid_argument, "--fn is required");
  return read_function(path);
}

TesterKind tester_kind(const std::string& s) {
  if (s == "edge") return TesterKind::edge;
  if (s == "single-draw") return TesterKind::single_draw;
  return TesterKind::pair;
}

ValuedFunction family_function(const std::string& family, DomainPtr dom, int r, std::uint64_t seed) {
  if (family == "random") return random_function(std::move(dom), r, seed);
  if (family == "monotone") return random_monotone(std::move(dom), r, seed);
  if (family == "anti-dictator") return anti_dictator(std::move(dom));
  if (family == "weight") return weight_function(std::move(dom));
  throw Error(ErrorCode::invalid_argument, "unknown family " + family);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonicity testing and decomposition toolkit for real-valued functions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  std::function<Output()> action;

  // test-monotone
  std::string fn_path;
  double eps = 0.1, budget = 4.0;
  std::optional<int> r_opt;
  std::uint64_t trials = 1;
  std::string tester = "pair";
  std::optional<std::uint64_t> reps;
  bool full = false;
  auto* tm = app.add_subcommand("test-monotone", "run a monotonicity tester on a function file");
  add_common(tm, common);
  tm->add_option("--fn", fn_path, "function file")->required();
  tm->add_option("--eps", eps, "distance parameter")->capture_default_str();
  tm->add_option("--budget", budget, "budget constant")->capture_default_str();
  tm->add_option("--r", r_opt, "image size bound (default: image size of f)");
  tm->add_option("--trials", trials, "independent runs")->check(CLI::PositiveNumber)->capture_default_str();
  tm->add_option("--tester", tester, "tester")
      ->check(CLI::IsMember({"pair", "edge", "single-draw"}))
      ->capture_default_str();
  tm->add_option("--repetitions", reps, "draws per setting override");
  tm->add_flag("--full", full, "do not stop at the first violation");
  tm->callback([&] {
    action = [&] {
      const auto f = load(fn_path);
      TesterConfig cfg;
      cfg.epsilon = eps;
      cfg.budget_constant = budget;
      cfg.r = r_opt.value_or(static_cast<int>(image_size(f)));
      cfg.seed = common.seed;
      cfg.early_exit = !full;
      cfg.repetitions = reps;
      cfg.validate();
      ojson config{{"fn", fn_path}, {"eps", eps},         {"budget", budget},   {"r", cfg.r},
                   {"trials", trials}, {"tester", tester}, {"full", full}};
      if (reps) config["repetitions"] = *reps;
      Output o;
      o.report = envelope("test-monotone", common, config);
      if (trials == 1) {
        CountingOracle oracle(f);
        const auto kind = tester_kind(tester);
        const auto rep = kind == TesterKind::pair   ? pair_tester(oracle, cfg)
                         : kind == TesterKind::edge ? edge_tester(oracle, cfg)
                                                    : single_draw_tester(oracle, cfg);
        o.report["result"] = report_to_json(rep);
      } else {
        const auto est = measure_rejection(f, tester_kind(tester), cfg, trials, common.seed, common.jobs);
        o.report["result"] = {{"trials", est.trials},         {"rejections", est.rejections},
                              {"rate", est.rate},             {"wilson_low", est.wilson_low},
                              {"wilson_high", est.wilson_high}, {"mean_queries", est.mean_queries}};
      }
      return o;
    };
  });

  // approx-distance
  double alpha = 0.05, cprime = 1.0, cedge = 1.0;
  std::optional<double> mono_eps;
  auto* ad = app.add_subcommand("approx-distance", "estimate the distance to monotonicity");
  add_common(ad, common);
  ad->add_option("--fn", fn_path, "function file")->required();
  ad->add_option("--alpha", alpha, "smallest distance level tried")->capture_default_str();
  ad->add_option("--cprime", cprime, "capture threshold constant")->capture_default_str();
  ad->add_option("--cedge", cedge, "violated-edge threshold constant")->capture_default_str();
  ad->add_option("--eps", mono_eps, "run a single close/far decision at this distance");
  ad->add_flag("--full", full, "evaluate every level even after a far estimate");
  ad->callback([&] {
    action = [&] {
      const auto f = load(fn_path);
      CaptureConfig cfg;
      cfg.c_prime = cprime;
      cfg.c_edge = cedge;
      cfg.seed = common.seed;
      cfg.early_exit = !full;
      ojson config{{"fn", fn_path}, {"alpha", alpha}, {"cprime", cprime}, {"cedge", cedge}, {"full", full}};
      CountingOracle oracle(f);
      Output o;
      if (mono_eps) {
        config["eps"] = *mono_eps;
        cfg.epsilon = *mono_eps;
        o.report = envelope("approx-distance", common, config);
        o.report["result"] = approx_report_to_json(approx_mono(oracle, cfg));
      } else {
        o.report = envelope("approx-distance", common, config);
        o.report["result"] = distance_report_to_json(approx_distance(oracle, alpha, cfg));
      }
      return o;
    };
  });

  // exact-distance
  std::string method = "auto";
  ExactLimits limits;
  auto* ed = app.add_subcommand("exact-distance", "exact distance to monotonicity with a certificate");
  add_common(ed, common);
  ed->add_option("--fn", fn_path, "function file")->required();
  ed->add_option("--method", method, "cover method")
      ->check(CLI::IsMember({"auto", "bipartite", "chains"}))
      ->capture_default_str();
  ed->add_option("--general-cap", limits.general_cap, "vertex cap for real-valued f")->capture_default_str();
  ed->add_option("--boolean-cap", limits.boolean_cap, "vertex cap for two-valued f")->capture_default_str();
  ed->callback([&] {
    action = [&] {
      const auto f = load(fn_path);
      const CoverMethod m = method == "bipartite" ? CoverMethod::bipartite
                            : method == "chains"  ? CoverMethod::chains
                                                  : CoverMethod::automatic;
      const auto cert = exact_distance(f, m, limits);
      const auto chk = check_certificate(f, cert);
      Output o;
      o.report = envelope("exact-distance", common,
                          {{"fn", fn_path},
                           {"method", method},
                           {"general_cap", limits.general_cap},
                           {"boolean_cap", limits.boolean_cap}});
      o.report["result"] = certificate_to_json(cert);
      o.report["check"] = {{"ok", chk.ok()},
                           {"repaired_monotone", chk.repaired_monotone},
                           {"hamming", chk.hamming},
                           {"cover_is_cover", chk.cover_is_cover}};
      o.exit_code = chk.ok() ? 0 : 1;
      return o;
    };
  });

  // decompose
  DecomposeOptions dopts;
  auto* dc = app.add_subcommand("decompose", "Boolean decomposition with a verified certificate");
  add_common(dc, common);
  dc->add_option("--fn", fn_path, "function file")->required();
  dc->add_option("--vertex-cap", dopts.matching.vertex_cap, "matching vertex cap")->capture_default_str();
  dc->callback([&] {
    action = [&] {
      const auto f = load(fn_path);
      dopts.exact.general_cap = std::max(dopts.exact.general_cap, dopts.matching.vertex_cap);
      const auto dec = decompose(f, dopts);
      Output o;
      o.report = envelope("decompose", common, {{"fn", fn_path}, {"vertex_cap", dopts.matching.vertex_cap}});
      o.report["empty"] = dec.k() == 0;
      o.report["result"] = decomposition_to_json(dec);
      o.exit_code = dec.monotone || dec.certificate.ok() ? 0 : 1;
      return o;
    };
  });

  // verify-inequalities
  SuiteConfig suite;
  auto* vi = app.add_subcommand("verify-inequalities", "check every inequality on a generated suite");
  add_common(vi, common);
  vi->add_option("--d", suite.d, "dimension")->check(CLI::Range(1, 8))->capture_default_str();
  vi->add_option("--r", suite.r, "image size")->check(CLI::PositiveNumber)->capture_default_str();
  vi->add_option("--count", suite.count, "instances")->capture_default_str();
  vi->add_option("--family", suite.family, "instance family")
      ->check(CLI::IsMember({"random", "monotone"}))
      ->capture_default_str();
  vi->add_option("--colorings", suite.colorings, "chain checks per instance")->capture_default_str();
  vi->add_flag("--inject-corruption", suite.inject_corruption, "corrupt each decomposition before verifying");
  vi->callback([&] {
    action = [&] {
      suite.seed = common.seed;
      suite.jobs = common.jobs;
      const auto res = verify_inequalities(suite);
      Output o;
      o.report = envelope("verify-inequalities", common,
                          {{"d", suite.d},
                           {"r", suite.r},
                           {"count", suite.count},
                           {"family", suite.family},
                           {"colorings", suite.colorings},
                           {"inject_corruption", suite.inject_corruption}});
      o.report["result"] = {{"instances", res.instances},
                            {"failed_instances", res.failed_instances},
                            {"checks", res.checks},
                            {"failures", res.failures}};
      o.rows = res.rows;
      o.exit_code = res.failed_instances == 0 ? 0 : 1;
      return o;
    };
  });

  // gen-function
  int gd = 4, gr = 3;
  std::string family = "random", dag_path;
  auto* gf = app.add_subcommand("gen-function", "write a generated function file");
  add_common(gf, common);
  gf->add_option("--d", gd, "dimension")->check(CLI::Range(1, 24))->capture_default_str();
  gf->add_option("--r", gr, "image size")->check(CLI::PositiveNumber)->capture_default_str();
  gf->add_option("--family", family, "generator")
      ->check(CLI::IsMember({"random", "monotone", "anti-dictator", "weight"}))
      ->capture_default_str();
  gf->add_option("--dag", dag_path, "DAG domain file (random and monotone families)");
  gf->callback([&] {
    action = [&] {
      DomainPtr dom = dag_path.empty() ? make_hypercube(gd) : read_domain(dag_path);
      const auto f = family_function(family, dom, gr, common.seed);
      std::filesystem::path ref;
      if (!dag_path.empty()) {
        ref = std::filesystem::absolute(dag_path);
        if (!common.out.empty())
          ref = std::filesystem::relative(ref, std::filesystem::absolute(common.out).parent_path());
      }
      Output o;
      o.report = function_to_json(f, ref);
      return o;
    };
  });

  // gen-lowerbound
  LowerBoundSpec lb;
  bool with_witness = false;
  auto* gl = app.add_subcommand("gen-lowerbound", "write a member of the lower-bound family");
  add_common(gl, common);
  gl->add_option("--d", lb.d, "odd perfect square dimension")->capture_default_str();
  gl->add_option("--r", lb.r, "divisor of 2 sqrt(d) + 1")->capture_default_str();
  gl->add_option("--i", lb.i, "distinguished coordinate")->capture_default_str();
  gl->add_flag("--witness", with_witness, "write a report with the witness matching instead");
  gl->callback([&] {
    action = [&] {
      const auto f = lower_bound_function(lb);
      Output o;
      if (!with_witness) {
        o.report = function_to_json(f);
        return o;
      }
      const auto m = witness_matching(lb);
      std::size_t violated = 0;
      auto pairs = ojson::array();
      for (const Edge& e : m.pairs) {
        violated += f(e.lower) > f(e.upper);
        pairs.push_back({e.lower, e.upper});
      }
      o.report = envelope("gen-lowerbound", common, {{"d", lb.d}, {"r", lb.r}, {"i", lb.i}});
      o.report["result"] = {{"width", lb.width()},
                            {"image_size", image_size(f)},
                            {"matching_size", m.size()},
                            {"violated_pairs", violated},
                            {"epsilon_lower_bound", static_cast<double>(m.size()) / (2.0 * f.size())},
                            {"matching", pairs}};
      return o;
    };
  });

  // bench
  int d_min = 2, d_max = 12, br = 4;
  double beps = 0.5;
  std::uint64_t btrials = 100;
  std::string bfamily = "anti-dictator", btester = "both";
  auto* bn = app.add_subcommand("bench", "query counts and rejection rates across dimensions");
  add_common(bn, common);
  bn->add_option("--d-min", d_min, "smallest dimension")->check(CLI::Range(1, 24))->capture_default_str();
  bn->add_option("--d-max", d_max, "largest dimension")->check(CLI::Range(1, 24))->capture_default_str();
  bn->add_option("--r", br, "image size for generated families")->capture_default_str();
  bn->add_option("--eps", beps, "distance parameter")->capture_default_str();
  bn->add_option("--budget", budget, "budget constant")->capture_default_str();
  bn->add_option("--trials", btrials, "runs per point")->check(CLI::PositiveNumber)->capture_default_str();
  bn->add_option("--family", bfamily, "instance family")
      ->check(CLI::IsMember({"random", "monotone", "anti-dictator", "weight"}))
      ->capture_default_str();
  bn->add_option("--tester", btester, "tester")
      ->check(CLI::IsMember({"pair", "edge", "both"}))
      ->capture_default_str();
  bn->callback([&] {
    action = [&] {
      if (d_min > d_max) throw Error(ErrorCode::invalid_argument, "--d-min exceeds --d-max");
      Output o;
      o.report = envelope("bench", common,
                          {{"d_min", d_min},
                           {"d_max", d_max},
                           {"r", br},
                           {"eps", beps},
                           {"budget", budget},
                           {"trials", btrials},
                           {"family", bfamily},
                           {"tester", btester}});
      auto points = ojson::array();
      for (int d = d_min; d <= d_max; ++d) {
        const auto f = family_function(bfamily, make_hypercube(d), br, derive_seed(common.seed, d));
        for (const char* kind : {"pair", "edge"}) {
          if (btester != "both" && btester != kind) continue;
          TesterConfig cfg;
          cfg.epsilon = beps;
          cfg.budget_constant = budget;
          cfg.r = static_cast<int>(image_size(f));
          const auto start = std::chrono::steady_clock::now();
          const auto est = measure_rejection(f, tester_kind(kind), cfg, btrials, derive_seed(common.seed, 1000 + d),
                                             common.jobs);
          const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          ojson row{{"d", d},
                    {"tester", kind},
                    {"repetitions", kind == std::string("pair") ? pair_repetitions(cfg, d) : edge_repetitions(cfg, d)},
                    {"mean_queries", est.mean_queries},
                    {"rejection_rate", est.rate},
                    {"wilson_low", est.wilson_low},
                    {"wilson_high", est.wilson_high}};
          if (common.timing) row["seconds"] = secs;
          points.push_back(row);
          o.rows.push_back(row);
        }
      }
      o.report["result"] = {{"points", points}};
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Output o = action();
    if (common.timing && o.report.contains("tool"))
      o.report["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(common, o, out);
    return o.exit_code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace rvmono::cli
