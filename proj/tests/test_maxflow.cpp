#include "oracles.hpp"

#include "mina/maxflow.hpp"
#include "mina/random.hpp"
#include "mina/rational.hpp"

#include <gtest/gtest.h>

using namespace mina;

namespace {

template <typename Cap>
CapGraph<Cap> random_graph(std::uint64_t seed, int n, double density) {
  Rng rng(seed);
  CapGraph<Cap> g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(density)) g.add_edge(u, v, Cap(static_cast<int>(rng.below(7))) / Cap(4));
    }
  }
  return g;
}

template <typename Cap>
void expect_valid_cut(const CapGraph<Cap>& g, const FlowResult<Cap>& r, int s, int t) {
  ASSERT_TRUE(r.cut.side_S[s]);
  ASSERT_FALSE(r.cut.side_S[t]);
  Cap sum = Cap(0);
  for (int e : r.cut.crossing_edges) {
    EXPECT_NE(r.cut.side_S[g.edge(e).u], r.cut.side_S[g.edge(e).v]);
    sum += g.edge(e).cap;
  }
  EXPECT_EQ(sum, r.cut.value);
}

}  // namespace

TEST(MaxFlow, PathBottleneck) {
  CapGraph<double> g(3);
  g.add_edge(0, 1, 0.5);
  g.add_edge(1, 2, 0.3);
  auto r = max_flow_min_cut(g, 0, 2);
  EXPECT_NEAR(r.flow_value, 0.3, 1e-12);
  EXPECT_NEAR(r.cut.value, 0.3, 1e-12);
  EXPECT_EQ(r.cut.side_S, (std::vector<bool>{true, true, false}));
}

TEST(MaxFlow, DisconnectedTerminals) {
  CapGraph<double> g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  auto r = max_flow_min_cut(g, 0, 3);
  EXPECT_EQ(r.flow_value, 0.0);
  EXPECT_EQ(r.cut.value, 0.0);
  EXPECT_TRUE(r.cut.crossing_edges.empty());
}

TEST(MaxFlow, BadArguments) {
  CapGraph<double> g(2);
  EXPECT_THROW(g.add_edge(0, 1, -1.0), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 2, 1.0), std::out_of_range);
  EXPECT_THROW(max_flow_min_cut(g, 1, 1), std::invalid_argument);
}

TEST(MaxFlow, ExhaustiveRational) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    auto g = random_graph<Rational>(seed, n, 0.6);
    const int s = 0, t = n - 1;
    auto r = max_flow_min_cut(g, s, t);
    EXPECT_EQ(r.flow_value, oracle::min_cut_bruteforce(g, s, t)) << seed;
    EXPECT_EQ(r.flow_value, r.cut.value);
    expect_valid_cut(g, r, s, t);
  }
}

TEST(MaxFlow, ExhaustiveDouble) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    auto g = random_graph<double>(seed + 5000, n, 0.5);
    Rng rng(seed);
    const int s = static_cast<int>(rng.below(n));
    int t = static_cast<int>(rng.below(n - 1));
    if (t >= s) ++t;
    auto r = max_flow_min_cut(g, s, t);
    EXPECT_NEAR(r.flow_value, oracle::min_cut_bruteforce(g, s, t), 1e-9) << seed;
    EXPECT_NEAR(r.cut.value, r.flow_value, 1e-9);
    expect_valid_cut(g, r, s, t);
  }
}

TEST(MaxFlow, SourceSideIsScaleInvariant) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    auto g = random_graph<double>(seed + 900, n, 0.6);
    for (double scale : {1e-6, 3.0, 1e6}) {
      CapGraph<double> h(n);
      for (const auto& a : g.edges()) h.add_edge(a.u, a.v, a.cap * scale);
      EXPECT_EQ(max_flow_min_cut(h, 0, n - 1).cut.side_S, max_flow_min_cut(g, 0, n - 1).cut.side_S) << seed;
    }
  }
}
