#include <gtest/gtest.h>

#include <cmath>

#include "mcalloc/ilp.hpp"
#include "mcalloc/rng.hpp"

using namespace mcalloc;
using namespace mcalloc::ilp;

namespace {

// Reference bid matrix: bidder 1 bids on {1,2},{1,4},{2,4},{1,2,4}; bidder 2
// on {1,2},{1,3},{2,3},{1,2,3}.
ZeroOneProgram reference_wdp() {
  ZeroOneProgram p;
  p.objective = {15, 13, 14, 42, 9, 17, 18, 31};
  p.le_rows = {{0, 1, 2, 3},           // bidder 1
               {4, 5, 6, 7},           // bidder 2
               {0, 1, 3, 4, 5, 7},     // channel 1
               {0, 2, 3, 4, 6, 7},     // channel 2
               {5, 6, 7},              // channel 3
               {1, 2, 3}};             // channel 4
  return p;
}

// Random WDP-like program: bidders own contiguous variable blocks, channel
// rows pick random subsets. With cross_group, ge rows mix bidders.
ZeroOneProgram random_program(Rng& rng, int max_vars, bool with_ge, bool cross_group) {
  ZeroOneProgram p;
  const int n = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(max_vars)));
  for (int i = 0; i < n; ++i) p.objective.push_back(std::round(rng.uniform(-2.0, 20.0) * 4) / 4);
  int v = 0;
  std::vector<std::vector<int>> groups;
  while (v < n) {
    const int len = std::min(n - v, 1 + static_cast<int>(rng.uniform_index(5)));
    std::vector<int> g;
    for (int i = 0; i < len; ++i) g.push_back(v++);
    groups.push_back(g);
    p.le_rows.push_back(g);
  }
  const int channels = static_cast<int>(rng.uniform_index(6));
  for (int c = 0; c < channels; ++c) {
    std::vector<int> row;
    for (int i = 0; i < n; ++i) {
      if (rng.uniform01() < 0.35) row.push_back(i);
    }
    if (!row.empty()) p.le_rows.push_back(row);
  }
  if (with_ge) {
    const int rows = 1 + static_cast<int>(rng.uniform_index(3));
    for (int r = 0; r < rows; ++r) {
      GeRow ge;
      if (cross_group) {
        for (int i = 0; i < n; ++i) {
          if (rng.uniform01() < 0.5) ge.vars.push_back(i);
        }
      } else {
        ge.vars = groups[rng.uniform_index(groups.size())];
      }
      for (std::size_t i = 0; i < ge.vars.size(); ++i) ge.coefs.push_back(rng.uniform(0.0, 10.0));
      ge.rhs = rng.uniform(0.0, 12.0);
      p.ge_rows.push_back(ge);
    }
  }
  return p;
}

}  // namespace

TEST(Ilp, ReferenceWdp) {
  const ZeroOneProgram p = reference_wdp();
  for (const SolveResult& r : {solve(p), brute_force(p)}) {
    ASSERT_EQ(r.status, SolveStatus::Optimal);
    EXPECT_EQ(r.objective_value, 42.0);
    EXPECT_EQ(r.solution, (std::vector<int>{0, 0, 0, 1, 0, 0, 0, 0}));
  }
}

TEST(Ilp, GeRowInfeasible) {
  ZeroOneProgram p;
  p.objective = {1.0};
  p.ge_rows = {GeRow{{0}, {1.0}, 2.0}};
  EXPECT_EQ(solve(p).status, SolveStatus::Infeasible);
  EXPECT_EQ(brute_force(p).status, SolveStatus::Infeasible);
}

TEST(Ilp, EmptyProgram) {
  const ZeroOneProgram p;
  const SolveResult r = solve(p);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.objective_value, 0.0);
  EXPECT_TRUE(r.solution.empty());
}

TEST(Ilp, NegativeObjectivesStayOff) {
  ZeroOneProgram p;
  p.objective = {-1.0, 3.0, -0.5};
  const SolveResult r = solve(p);
  EXPECT_EQ(r.solution, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(r.objective_value, 3.0);
}

TEST(Ilp, GeRowForcesCostlyChoice) {
  ZeroOneProgram p;
  p.objective = {10.0, 1.0};
  p.le_rows = {{0, 1}};
  p.ge_rows = {GeRow{{1}, {1.0}, 0.5}};
  const SolveResult r = solve(p);
  EXPECT_EQ(r.solution, (std::vector<int>{0, 1}));
}

TEST(Ilp, MatchesBruteForceOnRandomPackings) {
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const ZeroOneProgram p = random_program(rng, 20, false, false);
    const SolveResult a = solve(p);
    const SolveResult b = brute_force(p);
    ASSERT_EQ(a.status, b.status);
    ASSERT_NEAR(a.objective_value, b.objective_value, 1e-9) << "trial " << trial;
    ASSERT_TRUE(is_feasible(p, a.solution));
    ASSERT_NEAR(objective_of(p, a.solution), a.objective_value, 1e-9);
  }
}

TEST(Ilp, MatchesBruteForceWithGroupMinima) {
  Rng rng(405);
  for (int trial = 0; trial < 600; ++trial) {
    const ZeroOneProgram p = random_program(rng, 20, true, false);
    const SolveResult a = solve(p);
    const SolveResult b = brute_force(p);
    ASSERT_EQ(a.status, b.status) << "trial " << trial;
    if (a.status == SolveStatus::Optimal) {
      ASSERT_NEAR(a.objective_value, b.objective_value, 1e-9) << "trial " << trial;
      ASSERT_TRUE(is_feasible(p, a.solution));
    }
  }
}

TEST(Ilp, MatchesBruteForceWithCrossGroupRows) {
  Rng rng(406);
  for (int trial = 0; trial < 600; ++trial) {
    const ZeroOneProgram p = random_program(rng, 18, true, true);
    const SolveResult a = solve(p);
    const SolveResult b = brute_force(p);
    ASSERT_EQ(a.status, b.status) << "trial " << trial;
    if (a.status == SolveStatus::Optimal) {
      ASSERT_NEAR(a.objective_value, b.objective_value, 1e-9) << "trial " << trial;
      ASSERT_TRUE(is_feasible(p, a.solution));
    }
  }
}

TEST(Ilp, ManyRowsUseGeneralSearch) {
  // 70 singleton le rows exceed the memo mask; answer is every positive var.
  ZeroOneProgram p;
  double expect = 0.0;
  for (int i = 0; i < 70; ++i) {
    const double c = (i % 3 == 0) ? -1.0 : i * 0.5;
    p.objective.push_back(c);
    p.le_rows.push_back({i});
    expect += std::max(c, 0.0);
  }
  const SolveResult r = solve(p);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_DOUBLE_EQ(r.objective_value, expect);
}

TEST(Ilp, Deterministic) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ZeroOneProgram p = random_program(rng, 20, trial % 2 == 0, false);
    const SolveResult a = solve(p), b = solve(p);
    EXPECT_EQ(a.solution, b.solution);
    EXPECT_EQ(a.nodes_explored, b.nodes_explored);
  }
}

TEST(Ilp, BudgetExhaustionIsAFault) {
  Rng rng(9);
  ZeroOneProgram p;
  for (int i = 0; i < 30; ++i) p.objective.push_back(rng.uniform(1.0, 2.0));
  p.ge_rows = {GeRow{{0, 5}, {1.0, 1.0}, 1.0}, GeRow{{6, 29}, {1.0, 1.0}, 1.0}};
  EXPECT_THROW(solve(p, SolveOptions{3}), SolverFault);
}

TEST(Ilp, ValidationErrors) {
  ZeroOneProgram p;
  p.objective = {1.0};
  p.le_rows = {{3}};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_THROW(solve(p), std::invalid_argument);
  p.le_rows = {{0}};
  p.ge_rows = {GeRow{{0}, {}, 1.0}};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  ZeroOneProgram big;
  big.objective.assign(26, 1.0);
  EXPECT_THROW(brute_force(big), std::invalid_argument);
}
