// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include <gtest/gtest.h>

#include <random>

#include "moebal/perf_model.hpp"

namespace moebal {
namespace {

using Vec = std::vector<Count>;

ClusterSpec cluster(int devices, double bw = 1e9, double throughput = 1000) {
  return {devices, bw, throughput};
}

ModelSpec model(int experts, double param = 3e8, double grad = 3e8, double fnec = 0, double bnec = 0) {
  return {experts, 1, 1, 1e6, param, grad, fnec, bnec};
}

DeviceLoads loads(Vec h, Vec r) { return {std::move(h), std::move(r)}; }

void expect_rel(double got, double want) {
  EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want))) << "want " << want;
}

TEST(A2A, SlowestReceiverDominates) {
  expect_rel(t_a2a(loads({0, 0, 0}, {2, 1, 0}), cluster(3), model(3)), 2.0e-3);
  expect_rel(t_a2a(loads({0, 0, 0}, {4, 4, 4}), cluster(3), model(3)), 4.0e-3);
  EXPECT_EQ(t_a2a(loads({1, 1, 1}, {0, 0, 0}), cluster(3), model(3)), 0.0);
}

TEST(ExpertCompute, ForwardAndBackward) {
  expect_rel(t_fec(loads({5, 2, 2}, {0, 0, 0}), cluster(3)), 5.0e-3);
  expect_rel(t_fec(loads({3, 3, 3}, {0, 0, 0}), cluster(3)), 3.0e-3);
  EXPECT_EQ(t_fec(loads({0, 0, 0}, {0, 0, 0}), cluster(3)), 0.0);
  expect_rel(t_bec(loads({5, 2, 2}, {0, 0, 0}), cluster(3)), 1.0e-2);
  EXPECT_EQ(t_bec(loads({0, 0, 0}, {0, 0, 0}), cluster(3)), 0.0);
}

TEST(TransAgg, HandEvaluatedValues) {
  expect_rel(t_trans(1, 1, cluster(3), model(3)), 0.2);
  EXPECT_EQ(t_trans(0, 1, cluster(3), model(3)), 0.0);
  expect_rel(t_trans(2, 0, cluster(4), model(4, 1e8)), 0.2);

  expect_rel(t_agg(1, 1, cluster(3), model(3, 1, 3e8)), 0.2);
  EXPECT_EQ(t_agg(0, 2, cluster(3), model(3)), 0.0);
  expect_rel(t_agg(2, 0, cluster(4), model(4, 1, 1e8)), 0.2);
}

TEST(TransAgg, RejectsOutOfRangeCounts) {
  EXPECT_THROW(t_trans(1, 3, cluster(3), model(3)), Error);
  EXPECT_THROW(t_agg(1, -1, cluster(3), model(3)), Error);
  EXPECT_THROW(t_trans(4, 0, cluster(3), model(3)), Error);
}

TEST(LayerCost, UnscheduledSumsTheFourTerms) {
  // H=(5,2,2), R=(2,1,0), one expert sent to two devices.
  const auto c = layer_cost_unscheduled(loads({5, 2, 2}, {2, 1, 0}), 1, 1, cluster(3), model(3));
  expect_rel(c.a2a_time, 2.0e-3);
  expect_rel(c.fec_time, 5.0e-3);
  expect_rel(c.bec_time, 1.0e-2);
  expect_rel(c.trans_time, 0.2);
  expect_rel(c.agg_time, 0.2);
  expect_rel(c.total_unscheduled, 4 * 2.0e-3 + 3 * 5.0e-3 + 0.2 + 0.2);
}

TEST(LayerCost, DiagonalLoadCostsOnlyCompute) {
  const auto c = layer_cost_unscheduled(loads({4, 4, 4}, {0, 0, 0}), 0, 0, cluster(3), model(3));
  expect_rel(c.total_unscheduled, 3 * 4.0e-3);
}

TEST(LayerCost, DoublingBandwidthHalvesCommunication) {
  const auto l = loads({5, 2, 2}, {2, 1, 0});
  const auto a = layer_cost_unscheduled(l, 2, 1, cluster(3, 1e9), model(3));
  const auto b = layer_cost_unscheduled(l, 2, 1, cluster(3, 2e9), model(3));
  expect_rel(b.a2a_time, a.a2a_time / 2);
  expect_rel(b.trans_time, a.trans_time / 2);
  expect_rel(b.agg_time, a.agg_time / 2);
  EXPECT_EQ(b.fec_time, a.fec_time);
  EXPECT_EQ(b.bec_time, a.bec_time);
}

TEST(LayerCost, ScheduledHidesTransUnderForwardCompute) {
  EXPECT_EQ(exposed_after_hosts(0.20, 0.15, 0.10), 0.0);
  expect_rel(exposed_after_hosts(0.30, 0.15, 0.10), 0.05);

  // Same numbers through the full model: T_Trans = 0.3, T_FEC = 0.15, T_FNEC = 0.1.
  const auto c = layer_cost_scheduled(loads({150, 10}, {0, 0}), 1, 0, cluster(2),
                                      model(2, 3e8, 3e8, 0.10, 0.0));
  expect_rel(c.trans_time, 0.3);
  expect_rel(c.fec_time, 0.15);
  expect_rel(c.ptrans_time, 0.05);
  // Agg 0.3 fits under BEC 0.3 exactly.
  EXPECT_EQ(c.pagg_time, 0.0);
  expect_rel(c.total_scheduled, 3 * 0.15 + 0.05);
  EXPECT_LE(c.total_scheduled, c.total_unscheduled);
}

TEST(LayerCost, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Count> cell(0, 5000);
  std::uniform_real_distribution<double> unit(0.1, 10.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const int D = 2 + static_cast<int>(rng() % 7);
    Vec h(D), r(D);
    for (int i = 0; i < D; ++i) {
      h[i] = cell(rng);
      r[i] = cell(rng);
    }
    const ClusterSpec cl{D, 1e9 * unit(rng), 1e4 * unit(rng)};
    const ModelSpec m{D, 1, 1, 1e4 * unit(rng), 1e7 * unit(rng), 1e7 * unit(rng),
                      0.01 * unit(rng), 0.01 * unit(rng)};
    const int s = static_cast<int>(rng() % (D + 1));
    const int n = static_cast<int>(rng() % D);
    const auto c = layer_cost_scheduled({h, r}, s, n, cl, m);

    ASSERT_EQ(c.bec_time, 2 * c.fec_time);
    ASSERT_LE(c.ptrans_time, c.trans_time);
    ASSERT_LE(c.pagg_time, c.agg_time);
    ASSERT_LE(c.total_scheduled, c.total_unscheduled);

    // Monotone: more load or more experts never costs less; fewer devices
    // reached or more bandwidth never costs more.
    Vec h2 = h;
    h2[rng() % D] += 17;
    ASSERT_GE(layer_cost_scheduled({h2, r}, s, n, cl, m).total_unscheduled, c.total_unscheduled);
    if (s < D) ASSERT_GE(layer_cost_scheduled({h, r}, s + 1, n, cl, m).total_scheduled, c.total_scheduled);
    if (n + 1 < D) ASSERT_LE(layer_cost_scheduled({h, r}, s, n + 1, cl, m).total_unscheduled, c.total_unscheduled);
    ClusterSpec faster = cl;
    faster.avg_bandwidth *= 1.5;
    ASSERT_LE(layer_cost_scheduled({h, r}, s, n, faster, m).total_scheduled, c.total_scheduled);

    // Dimensional scaling: byte sizes and bandwidth scaled together.
    ClusterSpec cl4 = cl;
    cl4.avg_bandwidth *= 4;
    ModelSpec m4 = m;
    m4.input_bytes *= 4;
    m4.expert_param_bytes *= 4;
    m4.expert_grad_bytes *= 4;
    const auto c4 = layer_cost_scheduled({h, r}, s, n, cl4, m4);
    ASSERT_NEAR(c4.total_unscheduled, c.total_unscheduled, 1e-12 * c.total_unscheduled + 1e-300);
  }
}

}  // namespace
}  // namespace moebal
