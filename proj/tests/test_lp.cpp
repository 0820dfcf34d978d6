#include "oracles.hpp"

#include "mina/lp.hpp"
#include "mina/random.hpp"

#include <gtest/gtest.h>

using namespace mina;
using lp::LinearProgram;
using lp::Sense;

namespace {

LinearProgram random_lp(std::uint64_t seed, int max_vars) {
  Rng rng(seed);
  LinearProgram p;
  const int n = 2 + static_cast<int>(rng.below(max_vars - 1));
  for (int j = 0; j < n; ++j) {
    double lo = -2.0 + 0.5 * static_cast<double>(rng.below(5));
    double hi = lo + 0.5 * static_cast<double>(1 + rng.below(6));
    double c = -3.0 + 0.5 * static_cast<double>(rng.below(13));
    p.add_variable(lo, hi, c);
  }
  const int rows = 1 + static_cast<int>(rng.below(5));
  for (int i = 0; i < rows; ++i) {
    std::vector<lp::Term> t;
    for (int j = 0; j < n; ++j) {
      if (rng.bernoulli(0.7)) t.push_back({j, -3.0 + 0.5 * static_cast<double>(rng.below(13))});
    }
    auto s = static_cast<Sense>(rng.below(3));
    double rhs = -3.0 + 0.25 * static_cast<double>(rng.below(25));
    p.add_constraint(t, s, rhs);
  }
  return p;
}

}  // namespace

TEST(Simplex, MaxOfTwoLowerBounds) {
  LinearProgram p;
  int m = p.add_variable(0, 10, 1.0, "M");
  p.add_constraint({{m, 1.0}}, Sense::greater_equal, 0.6);
  p.add_constraint({{m, 1.0}}, Sense::greater_equal, 1.0);
  auto s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::optimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-9);
}

TEST(Simplex, MatchesVertexEnumeration) {
  int optimal = 0, infeasible = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    LinearProgram p = random_lp(seed, 6);
    auto ref = oracle::lp_by_vertex_enumeration(p);
    auto s = lp::solve(p);
    if (!ref) {
      EXPECT_EQ(s.status, lp::Status::infeasible) << seed << "\n" << p.dump();
      ++infeasible;
      continue;
    }
    ASSERT_EQ(s.status, lp::Status::optimal) << seed << "\n" << p.dump();
    EXPECT_NEAR(s.objective, *ref, 1e-6) << seed << "\n" << p.dump();
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
  EXPECT_GT(infeasible, 5);
}

TEST(Simplex, EqualityRowsAndNegativeBounds) {
  LinearProgram p;
  int x = p.add_variable(-5, 5, 1.0);
  int y = p.add_variable(-5, 5, 2.0);
  p.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::equal, 1.0);
  p.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::less_equal, 2.0);
  auto s = lp::solve(p);
  ASSERT_EQ(s.status, lp::Status::optimal);
  // x + y = 1, x - y <= 2: minimize x + 2y = 1 + y with y >= -1/2
  EXPECT_NEAR(s.objective, 0.5, 1e-9);
  EXPECT_NEAR(s.values[x], 1.5, 1e-9);
}

TEST(Simplex, DetectsInfeasibility) {
  LinearProgram p;
  int x = p.add_variable(0, 1, 1.0);
  p.add_constraint({{x, 1.0}}, Sense::greater_equal, 2.0);
  EXPECT_EQ(lp::solve(p).status, lp::Status::infeasible);
}

TEST(Simplex, DegenerateCyclingExample) {
  // A classic LP on which Dantzig's rule with naive tie-breaking cycles.
  LinearProgram p;
  int x4 = p.add_variable(0, 1000, -0.75);
  int x5 = p.add_variable(0, 1000, 20.0);
  int x6 = p.add_variable(0, 1000, -0.5);
  int x7 = p.add_variable(0, 1000, 6.0);
  p.add_constraint({{x4, 0.25}, {x5, -8.0}, {x6, -1.0}, {x7, 9.0}}, Sense::less_equal, 0.0);
  p.add_constraint({{x4, 0.5}, {x5, -12.0}, {x6, -0.5}, {x7, 3.0}}, Sense::less_equal, 0.0);
  p.add_constraint({{x6, 1.0}}, Sense::less_equal, 1.0);
  for (int bland_after : {0, 1, 50}) {
    lp::Options o;
    o.bland_after = bland_after;
    auto s = lp::solve(p, o);
    ASSERT_EQ(s.status, lp::Status::optimal);
    EXPECT_NEAR(s.objective, -1.25, 1e-9);
  }
}

TEST(Simplex, IterationCapIsReported) {
  LinearProgram p = random_lp(3, 6);
  while (lp::solve(p).iterations < 2) p = random_lp(p.num_variables() + 100, 6);
  lp::Options o;
  o.max_iterations = 1;
  EXPECT_THROW(lp::solve(p, o), lp::LpError);
}

TEST(Simplex, RejectsInvalidPrograms) {
  LinearProgram p;
  p.add_variable(0, lp::kInf, 1.0);
  EXPECT_THROW(lp::solve(p), lp::LpError);
  LinearProgram q;
  q.add_variable(1, 0, 1.0);
  EXPECT_THROW(lp::solve(q), lp::LpError);
}

TEST(Simplex, Deterministic) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    LinearProgram p = random_lp(seed, 6);
    auto a = lp::solve(p), b = lp::solve(p);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.values, b.values);
  }
}

TEST(Simplex, WeakDualityAgainstFeasiblePoints) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    LinearProgram p = random_lp(seed, 6);
    auto s = lp::solve(p);
    if (s.status != lp::Status::optimal) continue;
    Rng rng(seed + 1000);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> x(p.num_variables());
      for (int j = 0; j < p.num_variables(); ++j) x[j] = p.lower(j) + rng.uniform() * (p.upper(j) - p.lower(j));
      bool ok = true;
      for (const auto& r : p.constraints()) {
        double a = LinearProgram::activity(r, x);
        ok &= r.sense == Sense::greater_equal ? a >= r.rhs : r.sense == Sense::less_equal ? a <= r.rhs : false;
      }
      if (!ok) continue;
      double z = 0;
      for (int j = 0; j < p.num_variables(); ++j) z += p.cost(j) * x[j];
      EXPECT_GE(z, s.objective - 1e-7);
    }
  }
}

TEST(WarmStart, SatisfiedConstraintLeavesObjective) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    LinearProgram p = random_lp(seed, 6);
    auto s = lp::solve(p);
    if (s.status != lp::Status::optimal) continue;
    std::vector<lp::Term> row{{0, 1.0}};
    auto s2 = lp::add_constraint_and_resolve(p, s, row, Sense::greater_equal, p.lower(0) - 1.0);
    ASSERT_EQ(s2.status, lp::Status::optimal);
    EXPECT_NEAR(s2.objective, s.objective, 1e-9);
  }
}

TEST(WarmStart, MatchesColdSolveAndIsMonotone) {
  int compared = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    LinearProgram p = random_lp(seed, 6);
    auto s = lp::solve(p);
    Rng rng(seed * 7 + 1);
    for (int step = 0; step < 3 && s.status == lp::Status::optimal; ++step) {
      std::vector<lp::Term> row;
      for (int j = 0; j < p.num_variables(); ++j) row.push_back({j, -2.0 + 0.5 * static_cast<double>(rng.below(9))});
      // Cut off the current optimum when possible.
      double act = 0;
      for (const auto& t : row) act += t.coef * s.values[t.var];
      double before = s.objective;
      s = lp::add_constraint_and_resolve(p, s, row, Sense::greater_equal, act + 0.25);
      auto cold = lp::solve(p);
      ASSERT_EQ(s.status, cold.status) << seed;
      if (s.status == lp::Status::optimal) {
        EXPECT_NEAR(s.objective, cold.objective, 1e-7) << seed;
        EXPECT_GE(s.objective, before - 1e-9);
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 50);
}

TEST(Dump, DocumentedFormat) {
  LinearProgram p;
  int m = p.add_variable(0, 2, 1.0, "M");
  int x = p.add_variable(0, 1, 0.0, "x");
  p.add_constraint({{x, 0.5}, {m, -1.0}}, Sense::less_equal, 0.0);
  p.add_constraint({{x, 1.0}}, Sense::greater_equal, 1.0);
  EXPECT_EQ(p.dump(),
            "lp 2 2\n"
            "var 0 M 0 2\n"
            "var 1 x 0 1\n"
            "obj 0:1\n"
            "row 0 le 0 1:0.5 0:-1\n"
            "row 1 ge 1 1:1\n");
}
