// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include <gtest/gtest.h>

#include <random>

#include "json.hpp"
#include "moebal/scheduler.hpp"
#include "moebal/timeline_export.hpp"
#include "support/reference.hpp"

namespace moebal {
namespace {

ModelSpec blocks_model(int blocks, double fnec, double bnec) {
  return {2, blocks, 1, 1, 1, 1, fnec, bnec};
}

LayerCost block(double a2a, double fec, double trans = 0, double agg = 0) {
  LayerCost c;
  c.a2a_time = a2a;
  c.fec_time = fec;
  c.bec_time = 2 * fec;
  c.trans_time = trans;
  c.agg_time = agg;
  return c;
}

double vanilla_makespan(const std::vector<LayerCost>& costs, const ModelSpec& m) {
  double sum = 0;
  for (const auto& c : costs) sum += 4 * c.a2a_time + 3 * c.fec_time + m.fnec_time + m.bnec_time;
  return sum;
}

TEST(Partition, TransFillsNonExpertWindowFirst) {
  auto s = partition_trans(0.20, 0.15, 0.10);
  EXPECT_NEAR(s.first, 0.10, 1e-15);
  EXPECT_NEAR(s.second, 0.10, 1e-15);
  s = partition_trans(0.0, 0.15, 0.10);
  EXPECT_EQ(s.first, 0.0);
  EXPECT_EQ(s.second, 0.0);
  s = partition_trans(0.05, 0.15, 0.10);
  EXPECT_EQ(s.first, 0.0);
  EXPECT_EQ(s.second, 0.05);
  EXPECT_THROW(partition_trans(-0.1, 0.1, 0.1), Error);
}

TEST(Partition, AggMirrorsTrans) {
  auto s = partition_agg(0.20, 0.30, 0.10);
  EXPECT_NEAR(s.first, 0.10, 1e-15);
  EXPECT_NEAR(s.second, 0.10, 1e-15);
  s = partition_agg(0.0, 0.3, 0.1);
  EXPECT_EQ(s.first + s.second, 0.0);
  s = partition_agg(0.05, 0.3, 0.1);
  EXPECT_EQ(s.first, 0.05);
  EXPECT_EQ(s.second, 0.0);
  EXPECT_THROW(partition_agg(0.1, 0.1, -1.0), Error);
}

TEST(Timeline, NoPrimitivesReducesToSerializedLayerWork) {
  const auto m = blocks_model(3, 0.01, 0.02);
  const std::vector<LayerCost> costs{block(0.003, 0.010), block(0.002, 0.020), block(0.004, 0.005)};
  const auto tl = build_iteration_timeline(costs, 0.0, m);
  EXPECT_NEAR(tl.makespan(), vanilla_makespan(costs, m), 1e-15);
  const std::vector<double> none(3, 0.0);
  EXPECT_NEAR(build_serial_timeline(costs, none, m).makespan(), tl.makespan(), 1e-15);
}

TEST(Timeline, FirstBlockTransIsExposedAtIterationStart) {
  const auto m = blocks_model(1, 0.10, 0.0);
  const std::vector<LayerCost> costs{block(0.01, 0.15, 0.2)};
  const auto tl = build_iteration_timeline(costs, 0.0, m);
  EXPECT_EQ(tl.ops().front().kind, OpKind::Trans);
  EXPECT_EQ(tl.ops().front().start, 0.0);
  EXPECT_NEAR(tl.exposed_trans(0), 0.2, 1e-15);
  EXPECT_NEAR(tl.makespan(), vanilla_makespan(costs, m) + 0.2, 1e-12);
}

TEST(Timeline, SecondBlockTransHidesUnderFirstBlockForward) {
  const auto m = blocks_model(2, 0.10, 0.0);
  const std::vector<LayerCost> with{block(0.01, 0.15), block(0.01, 0.15, 0.2)};
  const std::vector<LayerCost> without{block(0.01, 0.15), block(0.01, 0.15)};
  const auto tl = build_iteration_timeline(with, 0.0, m);
  EXPECT_EQ(tl.exposed_trans(1), 0.0);
  EXPECT_NEAR(tl.makespan(), build_iteration_timeline(without, 0.0, m).makespan(), 1e-15);
}

TEST(Timeline, PlanRidesOnFirstA2A) {
  const auto m = blocks_model(2, 0.01, 0.01);
  const std::vector<LayerCost> costs{block(0.004, 0.01), block(0.004, 0.01)};
  const auto tl = build_iteration_timeline(costs, 0.006, m, 7);
  int plans = 0;
  for (const auto& op : tl.ops()) {
    if (op.kind != OpKind::Plan) continue;
    ++plans;
    EXPECT_EQ(op.iteration, 8);
    EXPECT_EQ(op.lane, Lane::Compute);
  }
  EXPECT_EQ(plans, 2);
  EXPECT_NEAR(tl.phase_totals().search, 2 * 0.002, 1e-15);
  EXPECT_NEAR(tl.makespan(), vanilla_makespan(costs, m) + 2 * 0.002, 1e-15);
}

TEST(Timeline, LengthMismatchIsAnError) {
  const auto m = blocks_model(2, 0.01, 0.01);
  const std::vector<LayerCost> costs{block(0.01, 0.01)};
  EXPECT_THROW(build_iteration_timeline(costs, 0.0, m), Error);
}

TEST(Timeline, InvariantsOnRandomBlockCosts) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 0.05);
  for (int trial = 0; trial < 500; ++trial) {
    const int blocks = 1 + static_cast<int>(rng() % 6);
    const auto m = blocks_model(blocks, u(rng), u(rng));
    std::vector<LayerCost> costs;
    std::vector<double> plans;
    for (int b = 0; b < blocks; ++b) {
      costs.push_back(block(u(rng), u(rng), 2 * u(rng), 2 * u(rng)));
      plans.push_back(rng() % 2 ? u(rng) : 0.0);
    }
    const auto tl = build_iteration_timeline(costs, plans, m, 3);
    const auto serial = build_serial_timeline(costs, plans, m, 3);
    ASSERT_EQ(testing::lane_overlap(tl), "");
    ASSERT_EQ(testing::lane_overlap(serial), "");
    ASSERT_LE(tl.makespan(), serial.makespan() + 1e-12);

    double fec_start[8] = {}, bec_end[8] = {};
    for (const auto& op : tl.ops()) {
      ASSERT_EQ(op.lane, lane_of(op.kind));
      if (op.kind == OpKind::FEC) fec_start[op.block] = op.start;
      if (op.kind == OpKind::BEC) bec_end[op.block] = op.end();
    }
    for (const auto& op : tl.ops()) {
      const bool trans = op.kind == OpKind::Trans || op.kind == OpKind::SubTrans1 || op.kind == OpKind::SubTrans2;
      const bool agg = op.kind == OpKind::Agg || op.kind == OpKind::SubAgg1 || op.kind == OpKind::SubAgg2;
      if (trans) ASSERT_LE(op.end(), fec_start[op.block] + 1e-12);
      if (agg) ASSERT_GE(op.start, bec_end[op.block] - 1e-12);
      if (op.kind == OpKind::Plan) ASSERT_EQ(op.iteration, 4);
    }

    // Interior blocks: the timeline leaves exactly the modeled residue exposed,
    // evaluated against the hosting block's compute windows.
    for (int b = 1; b < blocks; ++b) {
      ASSERT_NEAR(tl.exposed_trans(b),
                  exposed_after_hosts(costs[b].trans_time, costs[b - 1].fec_time, m.fnec_time), 1e-12);
      ASSERT_NEAR(tl.exposed_agg(b),
                  exposed_after_hosts(costs[b].agg_time, costs[b - 1].bec_time, m.bnec_time), 1e-12);
    }
    const auto phases = tl.phase_totals();
    ASSERT_NEAR(phases.total(), tl.makespan(), 1e-12);
  }
}

TEST(TimelineExport, JsonListsEveryOp) {
  const auto m = blocks_model(2, 0.01, 0.01);
  const std::vector<LayerCost> costs{block(0.004, 0.01, 0.02, 0.02), block(0.004, 0.01, 0.02, 0.02)};
  const auto tl = build_iteration_timeline(costs, 0.001, m, 2);
  const auto doc = nlohmann::json::parse(timeline_to_json(tl));
  EXPECT_EQ(doc["iteration"], 2);
  EXPECT_EQ(doc["ops"].size(), tl.ops().size());
  EXPECT_EQ(doc["ops"][0]["kind"], "Trans");
  EXPECT_DOUBLE_EQ(doc["makespan"].get<double>(), tl.makespan());

  const auto svg = timeline_to_svg(tl);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find(">compute<"), std::string::npos);
  EXPECT_NE(svg.find(">network<"), std::string::npos);
  std::size_t rects = 0;
  for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++rects;
  EXPECT_EQ(rects, tl.ops().size());
}

}  // namespace
}  // namespace moebal
