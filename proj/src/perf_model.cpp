// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/perf_model.hpp"

#include <algorithm>

namespace moebal {
namespace {

Count max_entry(const std::vector<Count>& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

double transfer_time(int selected, int excluded, double bytes, const ClusterSpec& cluster,
                     const ModelSpec& model) {
  const int devices = cluster.num_devices;
  if (excluded < 0 || excluded >= devices) {
    throw Error(ErrorCode::kInvalidArgument, "excluded device count must be in [0, D)");
  }
  if (selected < 0 || selected > model.num_experts) {
    throw Error(ErrorCode::kInvalidArgument, "selected expert count must be in [0, E]");
  }
  return static_cast<double>(selected) * static_cast<double>(devices - excluded) * bytes /
         (static_cast<double>(devices) * cluster.avg_bandwidth);
}

// 4 A2A + FEC + BEC; shared by both totals so they round identically.
double base_total(const LayerCost& c) { return 4.0 * c.a2a_time + (c.fec_time + c.bec_time); }

}  // namespace

double t_a2a(const DeviceLoads& loads, const ClusterSpec& cluster, const ModelSpec& model) {
  return static_cast<double>(max_entry(loads.received)) * model.input_bytes / cluster.avg_bandwidth;
}

double t_fec(const DeviceLoads& loads, const ClusterSpec& cluster) {
  return static_cast<double>(max_entry(loads.computed)) / cluster.compute_throughput;
}

double t_bec(const DeviceLoads& loads, const ClusterSpec& cluster) {
  return 2.0 * t_fec(loads, cluster);
}

double t_trans(int selected, int excluded, const ClusterSpec& cluster, const ModelSpec& model) {
  return transfer_time(selected, excluded, model.expert_param_bytes, cluster, model);
}

double t_agg(int selected, int excluded, const ClusterSpec& cluster, const ModelSpec& model) {
  return transfer_time(selected, excluded, model.expert_grad_bytes, cluster, model);
}

double exposed_after_hosts(double comm, double host_a, double host_b) {
  return std::max(0.0, comm - host_a - host_b);
}

LayerCost layer_cost_unscheduled(const DeviceLoads& loads, int selected, int excluded,
                                 const ClusterSpec& cluster, const ModelSpec& model) {
  LayerCost c;
  c.a2a_time = t_a2a(loads, cluster, model);
  c.fec_time = t_fec(loads, cluster);
  c.bec_time = t_bec(loads, cluster);
  c.trans_time = t_trans(selected, excluded, cluster, model);
  c.agg_time = t_agg(selected, excluded, cluster, model);
  c.ptrans_time = c.trans_time;
  c.pagg_time = c.agg_time;
  c.total_unscheduled = base_total(c) + c.trans_time + c.agg_time;
  c.total_scheduled = c.total_unscheduled;
  return c;
}

LayerCost layer_cost_scheduled(const DeviceLoads& loads, int selected, int excluded,
                               const ClusterSpec& cluster, const ModelSpec& model) {
  LayerCost c = layer_cost_unscheduled(loads, selected, excluded, cluster, model);
  c.ptrans_time = exposed_after_hosts(c.trans_time, c.fec_time, model.fnec_time);
  c.pagg_time = exposed_after_hosts(c.agg_time, c.bec_time, model.bnec_time);
  c.total_scheduled = base_total(c) + c.ptrans_time + c.pagg_time;
  return c;
}

}  // namespace moebal
