// One line per acceptance criterion; exit status 1 if any line fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "rvmono/decomposition.hpp"
#include "rvmono/dist_approx.hpp"
#include "rvmono/exact.hpp"
#include "rvmono/hard_instances.hpp"
#include "rvmono/random.hpp"
#include "rvmono/testers.hpp"

using namespace rvmono;

namespace {

constexpr std::uint64_t kSeed = 20240611;

int failures = 0;
std::map<int, std::string> lines;

void report(int id, const char* name, bool ok, const std::string& detail, double secs) {
  char head[128];
  std::snprintf(head, sizeof head, "criterion %2d %s  %s: ", id, ok ? "PASS" : "FAIL", name);
  char tail[64];
  std::snprintf(tail, sizeof tail, " (%.1fs)", secs);
  lines[id] = head + detail + tail;
  if (!ok) ++failures;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) body(k);
    });
  for (auto& t : pool) t.join();
}

struct SuiteInstance {
  int d = 0;
  int r = 0;
  std::uint64_t seed = 0;
};

// 500 functions: d cycles through 2..6, r through 2..8.
std::vector<SuiteInstance> suite() {
  std::vector<SuiteInstance> s;
  for (std::size_t k = 0; k < 500; ++k)
    s.push_back({2 + static_cast<int>(k % 5), 2 + static_cast<int>((k / 5) % 7), derive_seed(kSeed, k)});
  return s;
}

ValuedFunction make(const SuiteInstance& in) { return random_function(make_hypercube(in.d), in.r, in.seed); }

bool monotone_by_coordinates(const ValuedFunction& g, int d) {
  for (Vertex x = 0; x < g.size(); ++x)
    for (Vertex y = 0; y < g.size(); ++y)
      if (oracle::below(x, y, d) && g(x) > g(y)) return false;
  return true;
}

CoordinateSet coordinates(unsigned mask, int d) {
  CoordinateSet s;
  for (int i = 1; i <= d; ++i)
    if (mask >> (i - 1) & 1U) s.push_back(i);
  return s;
}

// cap_c(Q) by direct coordinate comparison.
std::size_t cap_size_ref(const std::vector<Vertex>& q, int c, int d) {
  std::vector<bool> in(d + 1, false);
  for (std::size_t a = 0; a < q.size(); ++a)
    for (std::size_t b = a + 1; b < q.size(); ++b) {
      int taken = 0;
      for (int i = 1; i <= d && taken < c; ++i)
        if (((q[a] >> (i - 1)) & 1U) != ((q[b] >> (i - 1)) & 1U)) {
          in[i] = true;
          ++taken;
        }
    }
  return static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
}

void criteria_1_2_4(const std::vector<SuiteInstance>& s) {
  struct Row {
    bool brute_checked = false;
    bool brute_ok = true;
    bool repair_ok = true;
    bool monotone = false;
    bool decomposition_ok = true;
    bool half = true;
    bool full = true;
    std::string note;
  };
  std::vector<Row> rows(s.size());
  auto t0 = std::chrono::steady_clock::now();
  parallel_for(s.size(), [&](std::size_t k) {
    const auto f = make(s[k]);
    Row& row = rows[k];
    const auto cert = exact_distance(f);
    if (s[k].d <= 4) {
      row.brute_checked = true;
      row.brute_ok = oracle::min_cover_brute(f) == cert.cover.size();
    }
    std::size_t hamming = 0;
    for (Vertex x = 0; x < f.size(); ++x) hamming += f(x) != cert.repaired(x);
    row.repair_ok = monotone_by_coordinates(cert.repaired, s[k].d) && hamming == cert.cover.size();
    row.monotone = cert.cover.empty();
    std::size_t violated = 0;
    for (Vertex x = 0; x < f.size(); ++x)
      for (int i = 0; i < s[k].d; ++i)
        if (!(x >> i & 1U) && f(x) > f(x | (1U << i))) ++violated;
    // ε·2^{d-1} = cover/2 and ε·2^d = cover.
    row.half = 2 * violated >= cert.cover.size();
    row.full = violated >= cert.cover.size();
    if (!row.monotone) {
      DecomposeOptions opts;
      opts.verify = false;
      const auto dec = decompose(f, opts);
      const auto c = verify_decomposition(f, dec);
      row.decomposition_ok = c.ok();
      if (!c.ok() && !c.witnesses.empty()) row.note = c.witnesses.front();
    }
  });
  const double secs = since(t0);
  std::size_t brute = 0, brute_bad = 0, repair_bad = 0, nonmono = 0, dec_bad = 0, half_bad = 0, full_bad = 0;
  std::string note;
  for (const auto& r : rows) {
    brute += r.brute_checked;
    brute_bad += !r.brute_ok;
    repair_bad += !r.repair_ok;
    nonmono += !r.monotone;
    dec_bad += !r.decomposition_ok;
    half_bad += !r.half;
    full_bad += !r.full;
    if (note.empty()) note = r.note;
  }
  report(1, "exact-oracle agreement", brute_bad == 0 && repair_bad == 0,
         fmt("%zu functions, %zu cover mismatches against brute force over %zu instances at d<=4, %zu bad repairs",
             s.size(), brute_bad, brute, repair_bad),
         secs);
  report(2, "decomposition certificate", dec_bad == 0,
         fmt("%zu non-monotone functions, %zu failing certificates%s%s", nonmono, dec_bad, note.empty() ? "" : "; ",
             note.c_str()),
         secs);
  report(4, "edge bound", half_bad == 0 && full_bad == 0,
         fmt("|S_f^-| >= eps*2^(d-1) violated %zu times, |S_f^-| >= eps*2^d violated %zu times over %zu functions",
             half_bad, full_bad, s.size()),
         secs);
}

void criterion_3() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t done = 0, bad = 0, attempts = 0;
  double worst_gap = 0;
  std::string first;
  while (done < 100) {
    const int d = 2 + static_cast<int>(attempts % 4);
    const auto seed = derive_seed(kSeed + 3, attempts++);
    const auto f = random_function(make_hypercube(d), 2 + static_cast<int>(seed % 6), seed);
    const auto p = violation_profile(f);
    if (p.violated_edges.empty()) continue;
    const auto dec = decompose(f);
    const auto col = random_coloring(p.violated_edges, seed ^ 0x5eed);
    const auto ch = robust_chain_check(f, col, dec);
    worst_gap = std::max(worst_gap, std::abs(ch.values[1] - ch.values[2]));
    if (!ch.ok()) {
      ++bad;
      if (first.empty()) first = fmt("seed %llu step %d", static_cast<unsigned long long>(seed), ch.failing_step.value_or(0));
    }
    ++done;
  }
  report(3, "robust chain", bad == 0,
         fmt("%zu (f, coloring) pairs at d<=5, %zu failures, max |v2-v3| = %.2e%s%s", done, bad, worst_gap,
             first.empty() ? "" : "; first ", first.c_str()),
         since(t0));
}

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t runs = 10000;
  std::atomic<std::size_t> rejections{0};
  parallel_for(runs, [&](std::size_t k) {
    const int d = 1 + static_cast<int>(k % 12);
    const int r = 1 + static_cast<int>((k / 12) % 16);
    const auto f = random_monotone(make_hypercube(d), r, derive_seed(kSeed + 5, k));
    CountingOracle o(f);
    TesterConfig cfg;
    cfg.epsilon = 0.1;
    cfg.r = r;
    cfg.seed = derive_seed(kSeed + 55, k);
    if (pair_tester(o, cfg).verdict == Verdict::reject) ++rejections;
  });
  report(5, "tester one-sidedness", rejections == 0,
         fmt("%zu pair-tester runs on monotone functions (d<=12, r<=16), %zu rejections", runs, rejections.load()),
         since(t0));
}

void criterion_6() {
  auto t0 = std::chrono::steady_clock::now();
  const auto anti = anti_dictator(make_hypercube(16));
  TesterConfig cfg;
  cfg.epsilon = 0.5;
  cfg.r = 2;
  const auto est = measure_rejection(anti, TesterKind::pair, cfg, 100, kSeed + 6, 8);
  const auto one = ValuedFunction(make_hypercube(1), {1, 0});
  const auto single = measure_rejection(one, TesterKind::single_draw, TesterConfig{}, 10000, kSeed + 66, 8);
  const double sigma = std::sqrt(0.25 / 10000);
  const bool ok = est.rejections >= 60 && std::abs(single.rate - 0.5) <= 3 * sigma;
  report(6, "tester power", ok,
         fmt("anti-dictator d=16: %llu/100 rejections, %.0f mean queries; d=1 single draw rate %.4f (3 sigma = %.4f)",
             static_cast<unsigned long long>(est.rejections), est.mean_queries, single.rate, 3 * sigma),
         since(t0));
}

void criterion_7(const std::vector<SuiteInstance>& s) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t within = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    const int d = 1 + static_cast<int>(k % 6);
    const auto seed = derive_seed(kSeed + 7, k);
    const auto f = random_function(make_hypercube(d), 3, seed);
    Rng rng = make_rng(seed);
    const auto set = coordinates(uniform_int<unsigned>(rng, 1, (1U << d) - 1), d);
    CountingOracle o(f);
    const double truth = boost::rational_cast<double>(mu_exact(f, set));
    within += std::abs(mu_estimate(o, set, 0.1, 0.05, seed ^ 7).value - truth) <= 0.1;
  }
  std::size_t checked = 0, bad = 0;
  for (const auto& in : s) {
    if (in.d > 4) continue;
    const auto f = make(in);
    const Rational twice = 2 * exact_epsilon(f);
    std::size_t violated = 0;
    for (Vertex x = 0; x < f.size(); ++x)
      for (int i = 0; i < in.d; ++i)
        if (!(x >> i & 1U) && f(x) > f(x | (1U << i))) ++violated;
    if (Rational(static_cast<std::int64_t>(violated), static_cast<std::int64_t>(in.d) << (in.d - 1)) > twice) ++bad;
    for (unsigned mask = 0; mask < (1U << in.d); ++mask) {
      ++checked;
      if (mu_exact(f, coordinates(mask, in.d)) > twice) ++bad;
    }
  }
  report(7, "capture and lb-on-dist", within >= 190 && bad == 0,
         fmt("mu_estimate within 0.1 in %zu/200 runs (need 190); %zu (f, S) pairs at d<=4, %zu lb-on-dist violations",
             within, checked, bad),
         since(t0));
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t mono_far = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const int d = 2 + static_cast<int>(k % 9);
    const auto f = random_monotone(make_hypercube(d), 1 + static_cast<int>(k % 8), derive_seed(kSeed + 8, k));
    CountingOracle o(f);
    CaptureConfig cfg;
    cfg.epsilon = 0.4;
    cfg.seed = derive_seed(kSeed + 88, k);
    mono_far += approx_mono(o, cfg).verdict == Closeness::far;
  }

  const auto anti = anti_dictator(make_hypercube(9));
  std::size_t anti_far = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    CountingOracle o(anti);
    CaptureConfig cfg;
    cfg.epsilon = 0.4;
    cfg.seed = derive_seed(kSeed + 888, k);
    anti_far += approx_mono(o, cfg).verdict == Closeness::far;
  }

  // |x| on d = 9 with five weight-8 points raised to 10.
  std::vector<double> v(512);
  for (Vertex x = 0; x < 512; ++x) v[x] = popcount(x);
  int raised = 0;
  for (Vertex x = 0; x < 512 && raised < 5; ++x)
    if (popcount(x) == 8) {
      v[x] = 10;
      ++raised;
    }
  const ValuedFunction near(make_hypercube(9), v);
  ExactLimits lim;
  lim.general_cap = 512;
  const Rational dist = exact_epsilon(near, lim);
  std::size_t near_close = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    CountingOracle o(near);
    CaptureConfig cfg;
    cfg.epsilon = 0.4;
    cfg.seed = derive_seed(kSeed + 8888, k);
    near_close += approx_mono(o, cfg).verdict == Closeness::close;
  }
  const bool ok = mono_far == 0 && anti_far >= 67 && near_close >= 67 && dist <= Rational(1, 50);
  report(8, "ApproxMono behaviour", ok,
         fmt("monotone far %zu/100; anti-dictator d=9 far %zu/100; near-monotone (eps = %lld/%lld) close %zu/100; "
             "c'=1, c_edge=1",
             mono_far, anti_far, static_cast<long long>(dist.numerator()), static_cast<long long>(dist.denominator()),
             near_close),
         since(t0));
}

void criterion_9() {
  auto t0 = std::chrono::steady_clock::now();
  const LowerBoundSpec spec{9, 7, 1};
  const auto f = lower_bound_function(spec);
  const auto m = witness_matching(spec);
  std::size_t violated = 0;
  for (const Edge& e : m.pairs) violated += oracle::below(e.lower, e.upper, 9) && f(e.lower) > f(e.upper);
  const bool all_violated = violated == m.size() && !m.empty();

  Rng rng = make_rng(kSeed + 9);
  std::size_t cap_bad = 0, cap_mismatch = 0;
  for (int t = 0; t < 10000; ++t) {
    const int c = uniform_int(rng, 1, 9);
    std::vector<Vertex> q(static_cast<std::size_t>(uniform_int(rng, 1, 12)));
    for (auto& x : q) x = uniform_int<Vertex>(rng, 0, 511);
    const auto cap = cap_set(q, c, 9);
    cap_mismatch += cap.size() != cap_size_ref(q, c, 9);
    cap_bad += cap.size() > static_cast<std::size_t>(c) * (q.size() - 1);
  }
  std::size_t count_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<Vertex> q(static_cast<std::size_t>(uniform_int(rng, 1, 30)));
    for (auto& x : q) x = uniform_int<Vertex>(rng, 0, 511);
    count_bad += violation_witness_count(q, spec) >= spec.width() * static_cast<int>(q.size());
  }
  const double bound = static_cast<double>(m.size()) / 1024.0;
  ExactLimits lim;
  lim.general_cap = 512;
  const Rational exact = exact_epsilon(f, lim);
  const bool ok = all_violated && cap_bad == 0 && cap_mismatch == 0 && count_bad == 0 && bound >= 0.15 &&
                  exact * 1024 >= Rational(static_cast<std::int64_t>(m.size()));
  report(9, "lower-bound family", ok,
         fmt("witness %zu/%zu violated; cap bound broken %zu/10000 (mismatches %zu); witness count >= w|Q| %zu/1000; "
             "eps >= |M|/2^(d+1) = %.4f, exact eps = %.4f",
             violated, m.size(), cap_bad, cap_mismatch, count_bad, bound, boost::rational_cast<double>(exact)),
         since(t0));
}

void criterion_10() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t bad_und = 0, bad_bool = 0, bad_median = 0;
  double min_ratio = 1e9;
  for (std::size_t k = 0; k < 1000; ++k) {
    const int d = 1 + static_cast<int>(k % 8);
    const auto f = random_function(make_hypercube(d), 1 + static_cast<int>((k / 8) % 8), derive_seed(kSeed + 10, k));
    const double und = undirected_objective(f);
    const double dc = dist_to_const(f);
    if (und < dc / (2 * std::sqrt(2.0))) ++bad_und;
    if (dc > 0) min_ratio = std::min(min_ratio, und / dc);

    const auto med = median_threshold(f);
    const auto& h = med.h;
    double p0 = 0;
    for (Vertex x = 0; x < h.size(); ++x) p0 += h(x) == 0;
    p0 /= static_cast<double>(h.size());
    if (undirected_objective(h) < std::sqrt(2.0) * p0 * (1 - p0)) ++bad_bool;

    // Influential edges owned by the larger endpoint, recounted directly.
    std::vector<int> inf_f(f.size(), 0), inf_h(f.size(), 0);
    for (Vertex x = 0; x < f.size(); ++x)
      for (int i = 0; i < d; ++i) {
        const Vertex y = x ^ (1U << i);
        if (f(x) > f(y)) ++inf_f[x];
        if (h(x) > h(y)) ++inf_h[x];
      }
    bool pointwise = true;
    for (Vertex x = 0; x < f.size(); ++x) pointwise &= inf_h[x] <= inf_f[x];
    if (!pointwise || 2 * dist_to_const_exact(h) < dist_to_const_exact(f)) ++bad_median;
  }
  report(10, "undirected inequalities", bad_und == 0 && bad_bool == 0 && bad_median == 0,
         fmt("1000 functions at d<=8: %zu below dist/(2 sqrt 2) (min ratio %.3f vs 0.354), %zu Boolean failures, "
             "%zu median-construction failures",
             bad_und, min_ratio, bad_bool, bad_median),
         since(t0));
}

void criterion_11() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t pair_bad = 0, approx_bad = 0, runs = 0;
  for (std::size_t k = 0; k < 20; ++k) {
    const int d = 3 + static_cast<int>(k % 8);
    const auto g = random_function(make_hypercube(d), 5, derive_seed(kSeed + 11, k));
    const auto h = k % 2 ? anti_dictator(make_hypercube(d)) : random_monotone(make_hypercube(d), 4, k);
    const auto seed = derive_seed(kSeed + 111, k);

    TesterConfig tc;
    tc.epsilon = 0.3;
    tc.r = 5;
    tc.seed = seed;
    tc.early_exit = false;
    CountingOracle og(g, true), oh(h, true);
    pair_tester(og, tc);
    pair_tester(oh, tc);
    auto a = og.query_log(), b = oh.query_log();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    pair_bad += a != b;

    CaptureConfig cc;
    cc.epsilon = 0.3;
    cc.seed = seed;
    cc.early_exit = false;
    CountingOracle ag(g, true), ah(h, true);
    approx_mono(ag, cc);
    approx_mono(ah, cc);
    a = ag.query_log();
    b = ah.query_log();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    approx_bad += a != b;
    ++runs;
  }
  report(11, "nonadaptive replay", pair_bad == 0 && approx_bad == 0,
         fmt("%zu function pairs: pair tester multisets differ %zu times, ApproxMono %zu times", runs, pair_bad,
             approx_bad),
         since(t0));
}

}  // namespace

int main() {
  const auto s = suite();
  criteria_1_2_4(s);
  criterion_3();
  criterion_5();
  criterion_6();
  criterion_7(s);
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
