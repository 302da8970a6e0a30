#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mcalloc/valuation.hpp"
#include "test_support.hpp"

using namespace mcalloc;

TEST(Utility, CurveShape) {
  const UtilityParams p{10.0, 50.0};
  EXPECT_EQ(utility(10.0, p), 0.0);
  EXPECT_EQ(utility(50.0, p), 1.0);
  EXPECT_NEAR(utility(std::sqrt(500.0), p), 0.5, 1e-12);
  EXPECT_NEAR(utility(30.0, p), std::log(3.0) / std::log(5.0), 1e-15);
  EXPECT_NEAR(utility(30.0, p), 0.6826, 1e-4);
  EXPECT_EQ(utility(0.0, p), 0.0);
  EXPECT_EQ(utility(500.0, p), 1.0);
  EXPECT_THROW(utility(-1.0, p), std::domain_error);
}

TEST(Utility, MonotoneAndBounded) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const double lo = rng.uniform(0.05, 1.0);
    const UtilityParams p{lo, lo + rng.uniform(1.0, 40.0)};
    double prev = 0.0;
    for (double c = 0.0; c < 60.0; c += 0.37) {
      const double u = utility(c, p);
      ASSERT_GE(u, prev);
      ASSERT_GE(u, 0.0);
      ASSERT_LE(u, 1.0);
      prev = u;
    }
  }
}

class ValuationScenario : public ::testing::Test {
 protected:
  Scenario s = support::make_scenario({{0, 0, 20, 2}, {100, 0, 24, 1}, {50, 50, 16, 1}},
                                      {{20, 10, 0.15, 20.0}, {80, 30, 0.1, 1.0}, {50, 25, 0.2, 15.0}});
};

TEST_F(ValuationScenario, BundleValueContexts) {
  EXPECT_EQ(bundle_value(0, {}, s, Context::Capacity), 0.0);
  EXPECT_EQ(bundle_value(0, {}, s, Context::Utility), 0.0);
  const ChannelSet all = s.all_channels();
  for (TenantId k = 0; k < 3; ++k) {
    const double c = rho(k, all, s);
    EXPECT_EQ(bundle_value(k, all, s, Context::Capacity), c);
    EXPECT_EQ(bundle_value(k, all, s, Context::Utility), utility(c, utility_params(s.tenant(k))));
    const double u = bundle_value(k, ChannelSet::single(1), s, Context::Utility);
    EXPECT_GE(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
}

TEST_F(ValuationScenario, FirstChannelScoreRule) {
  // Hand value: C_min 0.15, C_max 20, single-link capacity 5.
  EXPECT_NEAR(utility(0.15 + 5.0, {0.15, 20.0}), std::log(5.15 / 0.15) / std::log(20.0 / 0.15), 1e-15);
  EXPECT_NEAR(utility(0.15 + 5.0, {0.15, 20.0}), 0.72271, 1e-5);
  for (TenantId k = 0; k < 3; ++k) {
    const UtilityParams p = utility_params(s.tenant(k));
    for (ChannelId m = 0; m < s.n_channels(); ++m) {
      EXPECT_EQ(first_channel_score(k, m, s), utility(p.c_min_mbps + s.single_link_capacity(k, m), p));
      EXPECT_EQ(marginal_value(k, {}, m, s, Context::Utility), first_channel_score(k, m, s));
      EXPECT_EQ(marginal_value(k, {}, m, s, Context::Capacity), s.single_link_capacity(k, m));
    }
  }
}

TEST(FirstChannelScore, MonotoneInCapacity) {
  const UtilityParams p{0.12, 18.0};
  double prev = 0.0;
  for (double x = 0.0; x < 30.0; x += 0.1) {
    const double v = utility(p.c_min_mbps + x, p);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_EQ(utility(p.c_min_mbps + 0.0, p), 0.0);
  EXPECT_EQ(utility(p.c_min_mbps + (p.c_max_mbps - p.c_min_mbps), p), 1.0);
}

TEST_F(ValuationScenario, MarginalValue) {
  const ChannelSet held = ChannelSet::of({0, 2});
  EXPECT_THROW(marginal_value(0, held, 2, s, Context::Capacity), std::invalid_argument);
  EXPECT_DOUBLE_EQ(marginal_value(0, held, 3, s, Context::Capacity),
                   rho(0, held.with(3), s) - rho(0, held, s));
  // Tenant 1 has C_max = 1 Mbps and saturates with every channel.
  ASSERT_GE(rho(1, s.all_channels().without(3), s), 1.0);
  EXPECT_EQ(marginal_value(1, s.all_channels().without(3), 3, s, Context::Utility), 0.0);
}

TEST(RankByScore, SortedDescending) {
  Rng rng(1);
  const PreferenceList p = rank_by_score({0, 1, 2, 3}, {0.5, 2.0, -1.0, 1.0}, rng);
  EXPECT_EQ(p.ids, (std::vector<int>{1, 3, 0, 2}));
  EXPECT_EQ(p.scores, (std::vector<double>{2.0, 1.0, 0.5, -1.0}));
}

TEST(RankByScore, DistinctScoresLeaveRngUntouched) {
  Rng a(5), b(5);
  rank_by_score({0, 1, 2}, {0.3, 0.1, 0.2}, a);
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RankByScore, TiesAreUniformPermutations) {
  Rng rng(12);
  std::map<std::vector<int>, int> counts;
  const int draws = 6000;
  for (int i = 0; i < draws; ++i) counts[rank_by_score({0, 1, 2}, {1.0, 1.0, 1.0}, rng).ids]++;
  ASSERT_EQ(counts.size(), 6u);
  double chi2 = 0.0;
  for (const auto& [perm, c] : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  EXPECT_LT(chi2, 20.5);  // 5 degrees of freedom, p = 0.001
}

TEST(RankByScore, NearEqualScoresTie) {
  Rng rng(2);
  int first_zero = 0;
  for (int i = 0; i < 2000; ++i) {
    first_zero += rank_by_score({0, 1}, {1.0, 1.0 + 1e-14}, rng).front() == 0 ? 1 : 0;
  }
  EXPECT_GT(first_zero, 800);
  EXPECT_LT(first_zero, 1200);
}

TEST(RankByScore, ScaleInvariant) {
  Rng rng(3);
  std::vector<double> scores{3.2, 0.4, 7.7, 1.9, 5.5};
  const auto base = rank_by_score({0, 1, 2, 3, 4}, scores, rng).ids;
  for (double& x : scores) x *= 13.7;
  EXPECT_EQ(rank_by_score({0, 1, 2, 3, 4}, scores, rng).ids, base);
}

TEST_F(ValuationScenario, PreferenceListsReproducibleAndSorted) {
  for (Context ctx : {Context::Capacity, Context::Utility}) {
    Rng a(9), b(9);
    const auto pa = tenant_preferences(0, s.all_channels(), ChannelSet::single(1), s, ctx, a);
    const auto pb = tenant_preferences(0, s.all_channels(), ChannelSet::single(1), s, ctx, b);
    EXPECT_EQ(pa.ids, pb.ids);
    EXPECT_EQ(pa.size(), 3u);
    EXPECT_TRUE(std::is_sorted(pa.scores.rbegin(), pa.scores.rend()));
    const auto tenants = all_tenants(s);
    const auto cp = channel_preferences(3, tenants, s, ctx, a);
    EXPECT_EQ(cp.size(), 3u);
    EXPECT_TRUE(std::is_sorted(cp.scores.rbegin(), cp.scores.rend()));
    for (std::size_t i = 0; i < cp.size(); ++i) {
      EXPECT_EQ(cp.scores[i], single_channel_score(cp.ids[i], 3, s, ctx));
    }
  }
}
