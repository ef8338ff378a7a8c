#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rvmono/exact.hpp"
#include "rvmono/random.hpp"

using namespace rvmono;

namespace {

ValuedFunction cube(int d, std::vector<double> v) { return ValuedFunction(make_hypercube(d), std::move(v)); }

}  // namespace

TEST(IsMonotone, Basics) {
  EXPECT_TRUE(is_monotone(cube(2, {3, 3, 3, 3})));
  EXPECT_FALSE(is_monotone(cube(1, {1, 0})));
  EXPECT_TRUE(is_monotone(weight_function(make_hypercube(5))));
}

TEST(ExactDistance, Examples) {
  const auto mono = exact_distance(weight_function(make_hypercube(3)));
  EXPECT_EQ(mono.epsilon, Rational(0));
  EXPECT_TRUE(mono.cover.empty());

  const auto one = exact_distance(cube(1, {1, 0}));
  EXPECT_EQ(one.epsilon, Rational(1, 2));
  EXPECT_EQ(one.cover.size(), 1u);

  const auto anti = anti_dictator(make_hypercube(3));
  EXPECT_EQ(exact_distance(anti).epsilon, Rational(1, 2));
  EXPECT_EQ(oracle::min_cover_brute(anti), 4u);
}

TEST(ExactDistance, AgreesWithBruteForce) {
  for (int trial = 0; trial < 150; ++trial) {
    const int d = 2 + trial % 3;
    const int r = 2 + trial % 7;
    const auto f = random_function(make_hypercube(d), r, derive_seed(99, trial));
    const auto cert = exact_distance(f);
    ASSERT_EQ(cert.cover.size(), oracle::min_cover_brute(f)) << "trial " << trial;
    const auto chk = check_certificate(f, cert);
    ASSERT_TRUE(chk.ok()) << "trial " << trial;
  }
}

TEST(ExactDistance, DagDomain) {
  // Diamond 0 -> {1,2} -> 3 plus a tail 3 -> 4.
  const std::vector<Edge> es{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}};
  auto dom = std::make_shared<const Poset>(Poset::dag(5, es));
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_function(dom, 4, derive_seed(5, trial));
    const auto cert = exact_distance(f);
    ASSERT_EQ(cert.cover.size(), oracle::min_cover_brute(f));
    ASSERT_TRUE(check_certificate(f, cert).ok());
  }
}

TEST(ExactDistance, BipartiteAgreesWithChains) {
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 5;
    const auto f = random_function(make_hypercube(d), 2, derive_seed(3, trial));
    const auto a = exact_distance(f, CoverMethod::bipartite);
    const auto b = exact_distance(f, CoverMethod::chains);
    ASSERT_EQ(a.cover.size(), b.cover.size());
    ASSERT_TRUE(check_certificate(f, a).ok());
    ASSERT_TRUE(check_certificate(f, b).ok());
  }
}

TEST(ExactDistance, Caps) {
  const auto f = random_function(make_hypercube(9), 3, 1);
  try {
    exact_distance(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_cap_exceeded);
  }
  EXPECT_NO_THROW(exact_distance(anti_dictator(make_hypercube(10))));
  EXPECT_THROW(exact_distance(cube(2, {0, 1, 2, 3}), CoverMethod::bipartite), Error);
}

TEST(ExactDistance, MatchingSandwich) {
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const auto f = random_function(make_hypercube(d), 2 + trial % 6, derive_seed(17, trial));
    const auto cover = exact_distance(f).cover.size();
    const auto m = violation_matching_sizes(f);
    ASSERT_GE(cover, m.maximum);
    ASSERT_LE(cover, 2 * m.greedy_maximal);
    ASSERT_LE(m.greedy_maximal, m.maximum);
  }
}

TEST(EnumerateMatchings, Examples) {
  auto r0 = enumerate_matchings_check(weight_function(make_hypercube(3)));
  EXPECT_EQ(r0.max_weight, 0.0);
  EXPECT_EQ(r0.min_cardinality, 0u);
  auto r1 = enumerate_matchings_check(cube(1, {2, 1}));
  EXPECT_EQ(r1.max_weight, 1.0);
  EXPECT_EQ(r1.min_cardinality, 1u);
  auto r2 = enumerate_matchings_check(cube(2, {2, 0, 1, 1}));
  EXPECT_EQ(r2.max_weight, 2.0);
  EXPECT_EQ(r2.min_cardinality, 1u);
  EXPECT_THROW(enumerate_matchings_check(weight_function(make_hypercube(5))), Error);
}

TEST(EnumerateMatchings, AgreesWithRecursiveOracle) {
  for (int trial = 0; trial < 80; ++trial) {
    const int d = 1 + trial % 3;
    const auto f = random_function(make_hypercube(d), 2 + trial % 5, derive_seed(23, trial));
    const auto got = enumerate_matchings_check(f);
    const auto want = oracle::best_matching_brute(f);
    ASSERT_EQ(got.max_weight, want.first);
    ASSERT_EQ(got.min_cardinality, want.second);
  }
}

TEST(WorstColoring, SingleEdge) {
  const auto f = cube(2, {1, 0, 1, 1});
  const auto res = worst_coloring(f, ColoringSearch::exhaustive);
  EXPECT_DOUBLE_EQ(res.objective, 1.0 / 4);
}

TEST(WorstColoring, GreedyNeverBeatsExhaustive) {
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 2;
    const auto f = random_function(make_hypercube(d), 3, derive_seed(41, trial));
    if (violation_profile(f).violated_edges.size() > 14) continue;
    const auto ex = worst_coloring(f, ColoringSearch::exhaustive);
    const auto gr = worst_coloring(f, ColoringSearch::greedy, {20, 6, derive_seed(7, trial)});
    ASSERT_GE(gr.objective, ex.objective - 1e-12);
    ASSERT_NEAR(ex.objective, robust_objective(f, ex.coloring), 1e-15);
    // Exhaustive minimum really is a minimum: single flips never improve it.
    for (const auto& [e, c] : ex.coloring) {
      auto flipped = ex.coloring;
      flipped[e] = c == Color::red ? Color::blue : Color::red;
      ASSERT_GE(robust_objective(f, flipped), ex.objective - 1e-12);
    }
  }
}

TEST(WorstColoring, AntiDictatorRecorded) {
  const auto f = anti_dictator(make_hypercube(3));
  const auto res = worst_coloring(f, ColoringSearch::exhaustive);
  // Four disjoint edges: every coloring gives 4 unit roots over 8 vertices.
  EXPECT_DOUBLE_EQ(res.objective, 0.5);
}

TEST(WorstColoring, Cap) {
  const auto f = anti_dictator(make_hypercube(6));  // 32 violated edges
  EXPECT_THROW(worst_coloring(f, ColoringSearch::exhaustive), Error);
  EXPECT_NO_THROW(worst_coloring(f, ColoringSearch::greedy));
}

TEST(MedianThreshold, Examples) {
  const auto c = median_threshold(cube(2, {5, 5, 5, 5}));
  EXPECT_EQ(dist_to_const(c.h), 0.0);

  const auto m = median_threshold(cube(2, {1, 2, 2, 3}));
  EXPECT_EQ(m.m, 2.0);
  EXPECT_EQ(m.which, 2);
  EXPECT_EQ(std::vector<double>(m.h.values().begin(), m.h.values().end()), (std::vector<double>{0, 1, 1, 1}));

  const auto b = median_threshold(cube(2, {0, 1, 1, 0}));
  EXPECT_EQ(b.m, 0.0);
  EXPECT_EQ(dist_to_const(b.h), dist_to_const(cube(2, {0, 1, 1, 0})));
  for (Vertex x = 0; x < 4; ++x) EXPECT_EQ(b.h(x), x == 1 || x == 2 ? 1.0 : 0.0);
}

TEST(MedianThreshold, Guarantees) {
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 6;
    const auto f = random_function(make_hypercube(d), 1 + trial % 9, derive_seed(61, trial));
    const auto mt = median_threshold(f);
    ASSERT_GE(2 * dist_to_const_exact(mt.h), dist_to_const_exact(f));
    const auto pf = violation_profile(f);
    const auto ph = violation_profile(mt.h);
    for (Vertex x = 0; x < f.size(); ++x) ASSERT_LE(ph.undirected_counts[x], pf.undirected_counts[x]);
  }
}
