// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include <gtest/gtest.h>

#include <random>

#include "moebal/oracle.hpp"
#include "moebal/planner.hpp"
#include "support/reference.hpp"

namespace moebal {
namespace {

using Vec = std::vector<Count>;

// Compute-heavy setting: moving parameters is cheap next to expert compute.
ClusterSpec cheap_cluster(int D) { return {D, 1e9, 1000}; }
ModelSpec cheap_model(int E) { return {E, 1, 1, 1e3, 1e5, 1e5, 0.0, 0.0}; }

LoadMatrix skewed3() { return LoadMatrix::from_rows({{3, 0, 0}, {2, 1, 0}, {0, 1, 2}}); }

double cost_of(const LoadMatrix& load, const ExpertPlacement& p, int n, bool scheduled,
               const ClusterSpec& c, const ModelSpec& m) {
  const int s = p.num_selected();
  return layer_total(layer_cost_scheduled(derive_loads(load, p), s, s ? n : 0, c, m), scheduled);
}

TEST(IsBalanced, SpreadAgainstAlphaShare) {
  EXPECT_FALSE(is_balanced(Vec{5, 2, 2}, 9, 3, 0.5));
  EXPECT_TRUE(is_balanced(Vec{3, 3, 3}, 9, 3, 1e-9));
  EXPECT_TRUE(is_balanced(Vec{4, 3, 2}, 9, 3, 1.0));
  EXPECT_THROW(is_balanced(Vec{}, 9, 3, 1.0), Error);
}

TEST(BottomDevices, SkipsHomeAndBreaksTiesLow) {
  const auto load = LoadMatrix::from_rows({{9, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}});
  EXPECT_EQ(bottom_devices(load, 0, 1), (std::vector<int>{3}));
  EXPECT_EQ(bottom_devices(load, 0, 2), (std::vector<int>{1, 3}));
  // Column 1 is all zeros: lowest non-home indices win.
  EXPECT_EQ(bottom_devices(load, 1, 2), (std::vector<int>{0, 2}));
  EXPECT_THROW(bottom_devices(load, 0, 4), Error);
}

TEST(GreedySearch, UniformLoadNeedsNoPlacement) {
  LoadMatrix load(4, 4);
  for (int d = 0; d < 4; ++d)
    for (int e = 0; e < 4; ++e) load.at(d, e) = 5;
  const auto p = greedy_search(load, {1, 0.5, 1, false}, cheap_cluster(4), cheap_model(4));
  EXPECT_EQ(p.num_selected(), 0);
}

TEST(GreedySearch, PicksHeaviestExpertFirstAndNeverLosesToBaseline) {
  const auto load = skewed3();
  const PlannerConfig cfg{1, 0.5, 1, false};
  const auto c = cheap_cluster(3);
  const auto m = cheap_model(3);
  const auto p = greedy_search(load, cfg, c, m);
  ASSERT_GE(p.num_selected(), 1);
  EXPECT_EQ(p.selected().front(), 0);

  const double greedy = cost_of(load, p, 1, false, c, m);
  const double empty = cost_of(load, ExpertPlacement::empty(3, 3), 1, false, c, m);
  const auto best = brute_force_best(load, 1, c, m, false, ExclusionSpace::BottomK);
  EXPECT_LE(greedy, empty);
  EXPECT_LE(best.cost, greedy);
}

TEST(GreedySearch, ExpensiveTransferKeepsEmptyPlacement) {
  const auto load = skewed3();
  const auto c = cheap_cluster(3);
  ModelSpec m = cheap_model(3);
  m.expert_param_bytes = 1e12;
  m.expert_grad_bytes = 1e12;
  const auto p = greedy_search(load, {1, 0.5, 1, false}, c, m);
  EXPECT_EQ(p.num_selected(), 0);
  // The oracle agrees nothing beats the baseline.
  EXPECT_EQ(brute_force_best(load, 1, c, m, false).placement.num_selected(), 0);
}

TEST(GreedySearch, RequiresOneExpertPerDevice) {
  EXPECT_THROW(greedy_search(LoadMatrix(3, 2), {0, 1, 1, false}, cheap_cluster(3), cheap_model(2)), Error);
  EXPECT_THROW(greedy_search(skewed3(), {3, 1, 1, false}, cheap_cluster(3), cheap_model(3)), Error);
}

TEST(GreedySearch, MatchesLiteralTranscriptionOnRandomInstances) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int D = 2 + static_cast<int>(rng() % 5);
    const auto load = testing::random_load(rng, D, D, 12);
    const int n = static_cast<int>(rng() % D);
    const bool scheduled = rng() % 2;
    const double alpha = 0.05 + unit(rng);
    const ClusterSpec c{D, 1e9, 100 + 1000 * unit(rng)};
    const ModelSpec m{D, 1, 1, 1e6 * unit(rng) + 1, 1e7 * unit(rng) + 1, 1e7 * unit(rng) + 1,
                      0.01 * unit(rng), 0.02 * unit(rng)};

    const auto p = greedy_search(load, {n, alpha, 1, scheduled}, c, m);
    const auto ref = testing::explore_greedy(load, n, alpha, scheduled, c, m);

    // Returned selection is a prefix of the exploration order.
    ASSERT_EQ(p.num_selected(), ref.accepted);
    ASSERT_LE(static_cast<int>(ref.order.size()), D);
    for (int i = 0; i < p.num_selected(); ++i) {
      ASSERT_EQ(p.selected()[i], ref.order[i]);
      ASSERT_EQ(p.excluded()[i], ref.excluded[i]);
    }
    ASSERT_LE(cost_of(load, p, n, scheduled, c, m),
              cost_of(load, ExpertPlacement::empty(D, D), n, scheduled, c, m));
  }
}

TEST(PlanForIteration, ReuseIntervalOne) {
  std::mt19937_64 rng(8);
  std::vector<LoadMatrix> history;
  for (int i = 0; i < 4; ++i) history.push_back(testing::random_load(rng, 3, 3, 9));
  const PlannerConfig cfg{1, 0.2, 1, false};
  const auto c = cheap_cluster(3);
  const auto m = cheap_model(3);
  EXPECT_EQ(plan_for_iteration(history, 0, cfg, c, m), ExpertPlacement::empty(3, 3));
  for (int i = 1; i <= 4; ++i) {
    EXPECT_EQ(plan_for_iteration(history, i, cfg, c, m), greedy_search(history[i - 1], cfg, c, m));
  }
}

TEST(PlanForIteration, ReuseIntervalFiveReusesTheLastSearch) {
  std::mt19937_64 rng(9);
  std::vector<LoadMatrix> history;
  for (int i = 0; i < 12; ++i) history.push_back(testing::random_load(rng, 3, 3, 9));
  const PlannerConfig cfg{1, 0.2, 5, false};
  const auto c = cheap_cluster(3);
  const auto m = cheap_model(3);
  const auto first = plan_for_iteration(history, 0, cfg, c, m);
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(plan_for_iteration(history, i, cfg, c, m), first);
  const auto fifth = greedy_search(history[4], cfg, c, m);
  for (int i = 5; i <= 9; ++i) EXPECT_EQ(plan_for_iteration(history, i, cfg, c, m), fifth);
  EXPECT_EQ(plan_for_iteration(history, 10, cfg, c, m), greedy_search(history[9], cfg, c, m));

  PlacementPlanner cached(cfg, c, m);
  for (int i = 0; i < 12; ++i) {
    EXPECT_EQ(cached.plan(std::span(history).first(i), i), plan_for_iteration(history, i, cfg, c, m));
    EXPECT_EQ(cached.searches_at(i), i > 0 && i % 5 == 0);
  }
}

TEST(PlanForIteration, PersistencePredictorOnRepeatedDistribution) {
  const auto load = skewed3();
  const std::vector<LoadMatrix> history{load, load};
  const PlannerConfig cfg{1, 0.5, 1, false};
  EXPECT_EQ(plan_for_iteration(history, 2, cfg, cheap_cluster(3), cheap_model(3)),
            greedy_search(history[1], cfg, cheap_cluster(3), cheap_model(3)));
}

TEST(PlanForIteration, ShortHistoryIsAnError) {
  const std::vector<LoadMatrix> history{skewed3()};
  EXPECT_THROW(plan_for_iteration(history, 3, {1, 0.5, 1, false}, cheap_cluster(3), cheap_model(3)), Error);
}

}  // namespace
}  // namespace moebal
