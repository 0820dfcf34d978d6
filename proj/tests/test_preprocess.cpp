#include "fixtures.hpp"

#include "mina/exact.hpp"
#include "mina/generator.hpp"
#include "mina/preprocess.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mina;

namespace {

Instance two_costs() {
  return parse_instance("header 2 1 1 0\nvertex u 1:3\nvertex v 1:5\nedge u v\n");
}

/// Rebuilds a scaled guess as a standalone instance (kept slots only).
Instance as_instance(const ScaledInstance& s) {
  const Instance& inst = s.instance();
  InstanceBuilder b;
  for (Vertex v = 0; v < inst.num_vertices(); ++v) b.add_vertex(inst.vertex_label(v));
  for (Vertex v = 0; v < inst.num_vertices(); ++v) {
    auto slots = inst.slots(v);
    for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
      if (s.is_kept(v, j)) b.add_slot(v, inst.interface_label(slots[j].iface), s.scaled_cost[v][j]);
    }
  }
  for (const auto& e : inst.edges()) b.add_edge(e.u, e.v);
  return std::move(b).build();
}

}  // namespace

TEST(Guesses, UnitCosts) {
  Instance inst = fixtures::load("triangle.inst");
  auto g = enumerate_guesses(inst);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].b, 0);
  EXPECT_EQ(g[0].norm_factor, Rational(1));
  for (const auto& row : g[0].scaled_cost) {
    for (const auto& c : row) EXPECT_EQ(c, Rational(1));
  }
}

TEST(Guesses, ThreeAndFive) {
  Instance inst = two_costs();
  EXPECT_EQ(guess_limit(inst), 3);
  auto g = enumerate_guesses(inst);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].b, 3);
  EXPECT_EQ(g[0].norm_factor, Rational(5));
  EXPECT_EQ(g[0].scaled_cost[0][0], Rational(3, 5));
  EXPECT_EQ(g[0].scaled_cost[1][0], Rational(1));
}

TEST(Guesses, EdgeOnlyCoverableAtEight) {
  Instance inst = parse_instance(
      "header 3 2 2 0\nvertex a 1:8 2:1\nvertex b 1:8\nvertex c 2:1\nedge a b\nedge a c\n");
  // Reference: the cheapest way to cover each edge, max over edges.
  Rational need = 0;
  for (int e = 0; e < inst.num_edges(); ++e) {
    std::optional<Rational> best;
    for (Interface i = 0; i < inst.num_interfaces(); ++i) {
      auto cu = inst.cost(i, inst.edge(e).u), cv = inst.cost(i, inst.edge(e).v);
      if (cu && cv && (!best || std::max(*cu, *cv) < *best)) best = std::max(*cu, *cv);
    }
    need = std::max(need, *best);
  }
  for (int b = 0; b <= guess_limit(inst); ++b) EXPECT_EQ(discard_guess(inst, b), pow2(b) < need) << b;
  auto g = enumerate_guesses(inst);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0].b, 3);
}

TEST(Discard, Examples) {
  EXPECT_FALSE(discard_guess(fixtures::load("triangle.inst"), 0));
  Instance inst = two_costs();
  EXPECT_TRUE(discard_guess(inst, 1));
  // b = 4: max kept cost 5 <= 2^3, so b is not the smallest compatible exponent.
  EXPECT_TRUE(discard_guess(inst, 4));
  EXPECT_EQ(max_kept_cost(inst, 4) <= pow2(3), true);
}

TEST(Discard, ConnectivityUsesGroupReachability) {
  // Edge b-c needs cost 4, but the only group {a, b} is connected cheaply.
  Instance inst = parse_instance(
      "header 3 2 2 1\nvertex a 1:1\nvertex b 1:1 2:4\nvertex c 2:4\nedge a b\nedge b c\ngroup a b\n");
  EXPECT_TRUE(discard_guess(inst, 0, Problem::coverage));
  EXPECT_FALSE(discard_guess(inst, 0, Problem::connectivity));
}

TEST(Restarts, CountFormula) {
  EXPECT_EQ(restart_count(2, 100, 1), 1);
  EXPECT_EQ(restart_count(50, 1, 1), 1);
  EXPECT_EQ(restart_count(10, 100, 1), 3);  // ln 100 / ln 10 + 1 = 3
  EXPECT_EQ(restart_count(10, 101, 1), 4);
  EXPECT_EQ(restart_count(10, 2, 3), 3);
}

TEST(Restarts, DeterministicProcedureUnchanged) {
  Instance inst = fixtures::load("triangle.inst");
  Assignment fixed = activate_all(inst);
  auto r = run_with_restarts(
      inst, Problem::coverage, [&](const ScaledInstance&, std::uint64_t) { return RunOutcome{fixed, true}; }, 5);
  ASSERT_TRUE(r.best);
  EXPECT_EQ(*r.best, fixed);
  EXPECT_EQ(r.b, 0);
  EXPECT_EQ(r.run, 0);
}

TEST(Restarts, PrefersCheaperLaterGuess) {
  Instance inst = parse_instance(
      "header 3 2 3 0\nvertex a 1:4 2:3\nvertex b 1:4 2:3\nvertex c 1:4 3:6\nedge a b\nedge b c\n");
  auto g = enumerate_guesses(inst);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].b, 2);
  EXPECT_EQ(g[1].b, 3);
  Assignment at2 = activate_all(inst);
  at2.set(0, bit(0));
  at2.set(1, bit(0));
  at2.set(2, bit(0));
  Assignment at3(3);
  at3.set(0, bit(1));
  at3.set(1, bit(1));
  ASSERT_EQ(max_cost(inst, at2).max_cost, Rational(4));
  ASSERT_EQ(max_cost(inst, at3).max_cost, Rational(3));
  auto r = run_with_restarts(
      inst, Problem::coverage,
      [&](const ScaledInstance& s, std::uint64_t) { return RunOutcome{s.b == 2 ? at2 : at3, true}; }, 1);
  EXPECT_EQ(r.b, 3);
  EXPECT_EQ(r.cost, Rational(3));
}

TEST(Restarts, TiesGoToSmallerGuessThenRun) {
  Instance inst = parse_instance(
      "header 3 2 3 0\nvertex a 1:4 2:3\nvertex b 1:4 2:3\nvertex c 1:4 3:6\nedge a b\nedge b c\n");
  Assignment same = activate_all(inst);
  same.set(2, bit(0));
  auto r = run_with_restarts(
      inst, Problem::coverage, [&](const ScaledInstance&, std::uint64_t) { return RunOutcome{same, true}; }, 1);
  EXPECT_EQ(r.b, 2);
  EXPECT_EQ(r.run, 0);
}

TEST(Restarts, FailureProbabilityDecaysWithRestarts) {
  Instance inst = fixtures::load("triangle.inst");
  const int m = inst.num_edges();
  const int trials = 3000;
  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    auto r = run_with_restarts(
        inst, Problem::coverage,
        [&](const ScaledInstance&, std::uint64_t seed) {
          Rng rng(seed);
          return RunOutcome{activate_all(inst), rng.uniform() >= 1.0 / m};
        },
        derive_seed(99, t));
    failures += r.best ? 0 : 1;
  }
  const double p = std::pow(1.0 / m, restart_count(m, guess_limit(inst)));
  const double sigma = std::sqrt(p * (1 - p) / trials);
  EXPECT_LE(static_cast<double>(failures) / trials, p + 3 * sigma);
}

TEST(Restarts, DeterministicGivenSeed) {
  GeneratorParams p;
  p.n = 6;
  p.cost_hi = 9;
  p.seed = 4;
  Instance inst = generate_random(p);
  auto proc = [&](const ScaledInstance& s, std::uint64_t seed) {
    Rng rng(seed);
    Assignment a(inst.num_vertices());
    for (Vertex v = 0; v < inst.num_vertices(); ++v) a.set(v, s.kept_mask[v] & rng.next());
    return RunOutcome{a, is_covering(inst, a).covering};
  };
  auto r1 = run_with_restarts(inst, Problem::coverage, proc, 11);
  auto r2 = run_with_restarts(inst, Problem::coverage, proc, 11);
  EXPECT_EQ(r1.best.has_value(), r2.best.has_value());
  if (r1.best) {
    EXPECT_EQ(*r1.best, *r2.best);
  }
  EXPECT_EQ(r1.feasible_runs, r2.feasible_runs);
}

TEST(ScaledProperties, MaxIsOneAndCheapPartition) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GeneratorParams p;
    p.n = 3 + static_cast<int>(seed % 6);
    p.k = 1 + static_cast<int>(seed % 3);
    p.cost_lo = 0;
    p.cost_hi = seed % 2 ? Rational(40) : Rational(1, 3);
    p.seed = seed;
    Instance inst = generate_random(p);
    for (const auto& s : enumerate_guesses(inst)) {
      if (max_kept_cost(inst, s.b) == 0) continue;
      EXPECT_EQ(s.max_scaled_cost(), Rational(1));
      for (Vertex v = 0; v < inst.num_vertices(); ++v) {
        Rational sum = 0;
        for (std::size_t j = 0; j < s.kept[v].size(); ++j) {
          if (!s.kept[v][j]) continue;
          EXPECT_GE(s.scaled_cost[v][j], 0);
          EXPECT_LE(s.scaled_cost[v][j], 1);
          sum += s.scaled_cost[v][j];
        }
        EXPECT_EQ(s.cheap[v], sum < 1);
      }
    }
  }
}

TEST(ScaledProperties, ZeroCostVertexIsCheap) {
  Instance inst = parse_instance("header 2 1 1 0\nvertex u 1:0\nvertex v 1:1\nedge u v\n");
  auto g = enumerate_guesses(inst);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g[0].is_cheap(0));
  EXPECT_FALSE(g[0].is_cheap(1));
}

// Needs b* >= 1: at b* = 0 normalization by the largest cost below 1 can push
// the scaled optimum arbitrarily low.
TEST(ScaledProperties, MinimalGuessOptimumIsAtLeastHalf) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorParams p;
    p.n = 5;
    p.k = 3;
    p.cost_lo = 0;
    p.cost_hi = 16;
    p.seed = seed;
    Instance inst = generate_random(p);
    auto g = enumerate_guesses(inst);
    ASSERT_FALSE(g.empty());
    if (g.front().b < 1) continue;
    ++checked;
    auto opt = exact_coverage(as_instance(g.front())).opt_cost;
    EXPECT_GE(opt, Rational(1, 2)) << seed;
  }
  EXPECT_GT(checked, 20);
}
