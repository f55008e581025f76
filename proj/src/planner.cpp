// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/planner.hpp"

#include <algorithm>
#include <numeric>

namespace moebal {
namespace {

void check_planner_inputs(const LoadMatrix& load, const PlannerConfig& config,
                          const ClusterSpec& cluster, const ModelSpec& model) {
  cluster.validate();
  config.validate(cluster);
  if (model.num_experts != cluster.num_devices) {
    throw Error(ErrorCode::kPrecondition, "planner requires num_experts == num_devices");
  }
  if (load.num_devices() != cluster.num_devices || load.num_experts() != model.num_experts) {
    throw Error(ErrorCode::kDimensionMismatch, "load matrix does not match cluster/model");
  }
}

int argmax_lowest(std::span<const Count> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

double evaluate(const DeviceLoads& loads, int selected, const PlannerConfig& config,
                const ClusterSpec& cluster, const ModelSpec& model) {
  const LayerCost c = layer_cost_scheduled(loads, selected, config.excluded_devices, cluster, model);
  return layer_total(c, config.scheduled);
}

}  // namespace

void PlannerConfig::validate(const ClusterSpec& cluster) const {
  if (excluded_devices < 0 || excluded_devices >= cluster.num_devices) {
    throw Error(ErrorCode::kInvalidArgument, "n must be in [0, D)");
  }
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be > 0");
  if (reuse_interval < 1) throw Error(ErrorCode::kInvalidArgument, "reuse_interval must be >= 1");
}

bool is_balanced(std::span<const Count> computed, Count total_inputs, int num_experts, double alpha) {
  if (computed.empty()) throw Error(ErrorCode::kInvalidArgument, "empty device-load vector");
  if (num_experts < 1) throw Error(ErrorCode::kInvalidArgument, "num_experts must be >= 1");
  const auto [lo, hi] = std::minmax_element(computed.begin(), computed.end());
  const double spread = static_cast<double>(*hi - *lo);
  return spread < alpha * static_cast<double>(total_inputs) / static_cast<double>(num_experts);
}

std::vector<int> bottom_devices(const LoadMatrix& load, int expert, int count) {
  const int home = ExpertPlacement::home(expert);
  std::vector<int> candidates;
  for (int d = 0; d < load.num_devices(); ++d) {
    if (d != home) candidates.push_back(d);
  }
  if (count < 0 || count > static_cast<int>(candidates.size())) {
    throw Error(ErrorCode::kInvalidArgument, "cannot exclude more than D - 1 devices");
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return load.at(a, expert) < load.at(b, expert);
  });
  candidates.resize(count);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

ExpertPlacement greedy_search(const LoadMatrix& load, const PlannerConfig& config,
                              const ClusterSpec& cluster, const ModelSpec& model) {
  check_planner_inputs(load, config, cluster, model);
  const int devices = cluster.num_devices;
  const int experts = model.num_experts;
  const Count total = load.total();

  DeviceLoads loads = derive_loads(load, ExpertPlacement::empty(devices, experts));
  double best = evaluate(loads, 0, config, cluster, model);

  std::vector<int> selected;
  std::vector<std::vector<int>> excluded;
  std::vector<bool> used(devices, false);
  int accepted = 0;

  while (!is_balanced(loads.computed, total, experts, config.alpha)) {
    // Heaviest device doubles as the expert to replicate (expert e homed on e).
    const int heaviest = argmax_lowest(loads.computed);
    if (used[heaviest]) break;
    used[heaviest] = true;

    selected.push_back(heaviest);
    excluded.push_back(bottom_devices(load, heaviest, config.excluded_devices));
    const auto candidate = ExpertPlacement::from_selection(devices, experts, selected, excluded);
    loads = derive_loads(load, candidate);

    const int s = static_cast<int>(selected.size());
    const double cost = evaluate(loads, s, config, cluster, model);
    if (cost < best) {
      best = cost;
      accepted = s;
    }
  }
  return ExpertPlacement::from_selection(devices, experts, selected, excluded).truncated(accepted);
}

ExpertPlacement plan_for_iteration(std::span<const LoadMatrix> history, int iter_index,
                                   const PlannerConfig& config, const ClusterSpec& cluster,
                                   const ModelSpec& model) {
  config.validate(cluster);
  if (iter_index < 0) throw Error(ErrorCode::kInvalidArgument, "negative iteration index");
  const int last_search = (iter_index / config.reuse_interval) * config.reuse_interval;
  if (last_search == 0) return ExpertPlacement::empty(cluster.num_devices, model.num_experts);
  if (static_cast<int>(history.size()) < last_search) {
    throw Error(ErrorCode::kPrecondition, "history does not cover the predictor iteration");
  }
  return greedy_search(history[last_search - 1], config, cluster, model);
}

PlacementPlanner::PlacementPlanner(PlannerConfig config, ClusterSpec cluster, ModelSpec model)
    : config_(config), cluster_(cluster), model_(model) {
  config_.validate(cluster_);
}

bool PlacementPlanner::searches_at(int iter_index) const {
  return iter_index > 0 && iter_index % config_.reuse_interval == 0;
}

const ExpertPlacement& PlacementPlanner::plan(std::span<const LoadMatrix> history, int iter_index) {
  const int last_search = (iter_index / config_.reuse_interval) * config_.reuse_interval;
  if (!cached_for_ || *cached_for_ != last_search) {
    cached_ = plan_for_iteration(history, iter_index, config_, cluster_, model_);
    cached_for_ = last_search;
  }
  return cached_;
}

}  // namespace moebal
