// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "moebal/core.hpp"
#include "moebal/perf_model.hpp"

namespace moebal {

struct PlannerConfig {
  int excluded_devices = 0;  // devices a selected expert is not sent to
  double alpha = 1.0;        // balance coefficient
  int reuse_interval = 1;    // search every F iterations
  bool scheduled = false;    // score candidates with the overlap-aware model

  void validate(const ClusterSpec& cluster) const;
};

/// max(H) - min(H) < alpha * total_inputs / num_experts.
bool is_balanced(std::span<const Count> computed, Count total_inputs, int num_experts, double alpha);

/// The `count` devices other than `home` with the fewest inputs routed to
/// `expert`; ties go to the lower device index. Result is sorted ascending.
std::vector<int> bottom_devices(const LoadMatrix& load, int expert, int count);

/// Greedy placement search: repeatedly picks the heaviest device's expert,
/// excludes the devices with the least demand for it and keeps the longest
/// prefix that strictly lowered the modeled layer time.
ExpertPlacement greedy_search(const LoadMatrix& load, const PlannerConfig& config,
                              const ClusterSpec& cluster, const ModelSpec& model);

/// Placement to use at iteration `iter_index`, given the observed matrices of
/// earlier iterations (`history[t]` is iteration t). Searches only on
/// multiples of the reuse interval, predicting from the previous iteration.
ExpertPlacement plan_for_iteration(std::span<const LoadMatrix> history, int iter_index,
                                   const PlannerConfig& config, const ClusterSpec& cluster,
                                   const ModelSpec& model);

/// plan_for_iteration with the last search result cached. Feed iterations in
/// order; one instance per layer stream.
class PlacementPlanner {
 public:
  PlacementPlanner(PlannerConfig config, ClusterSpec cluster, ModelSpec model);

  /// True when a search runs for `iter_index` (the Plan primitive executes).
  bool searches_at(int iter_index) const;

  const ExpertPlacement& plan(std::span<const LoadMatrix> history, int iter_index);

 private:
  PlannerConfig config_;
  ClusterSpec cluster_;
  ModelSpec model_;
  std::optional<int> cached_for_;  // iteration index of the cached search
  ExpertPlacement cached_;
};

}  // namespace moebal
