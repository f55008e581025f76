// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include "moebal/core.hpp"

namespace moebal {

/// Modeled execution time of one MoE layer, all in seconds.
struct LayerCost {
  double a2a_time = 0.0;
  double fec_time = 0.0;
  double bec_time = 0.0;
  double trans_time = 0.0;
  double agg_time = 0.0;
  double ptrans_time = 0.0;  // Trans left exposed after overlap
  double pagg_time = 0.0;    // Agg left exposed after overlap
  double total_unscheduled = 0.0;
  double total_scheduled = 0.0;
};

/// Slowest device's receive time for one all-to-all.
double t_a2a(const DeviceLoads& loads, const ClusterSpec& cluster, const ModelSpec& model);

/// Slowest device's forward expert compute; experts on a device run back to back.
double t_fec(const DeviceLoads& loads, const ClusterSpec& cluster);

/// Backward expert compute, twice the forward time.
double t_bec(const DeviceLoads& loads, const ClusterSpec& cluster);

/// Parameter broadcast of `selected` experts, each to D - `excluded` devices.
double t_trans(int selected, int excluded, const ClusterSpec& cluster, const ModelSpec& model);

/// Gradient aggregation, same shape as t_trans with gradient bytes.
double t_agg(int selected, int excluded, const ClusterSpec& cluster, const ModelSpec& model);

/// Part of a communication that does not fit under two back-to-back hosts.
/// Evaluated as max(0, comm - host_a - host_b).
double exposed_after_hosts(double comm, double host_a, double host_b);

LayerCost layer_cost_unscheduled(const DeviceLoads& loads, int selected, int excluded,
                                 const ClusterSpec& cluster, const ModelSpec& model);

/// Also fills the unscheduled total, so callers get both views from one call.
LayerCost layer_cost_scheduled(const DeviceLoads& loads, int selected, int excluded,
                               const ClusterSpec& cluster, const ModelSpec& model);

/// Picks the total the planner optimizes.
inline double layer_total(const LayerCost& cost, bool scheduled) {
  return scheduled ? cost.total_scheduled : cost.total_unscheduled;
}

}  // namespace moebal
