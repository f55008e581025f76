// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moebal/core.hpp"
#include "moebal/perf_model.hpp"
#include "moebal/planner.hpp"
#include "moebal/scheduler.hpp"
#include "moebal/workload.hpp"

namespace moebal {

struct Policy {
  enum class Variant { VanillaEP, TopM, ProProphetUnscheduled, ProProphetScheduled };

  Variant variant = Variant::VanillaEP;
  int m = 0;  // TopM only
  PlannerConfig planner;

  static Policy vanilla();
  static Policy top(int m);
  static Policy prophet(PlannerConfig planner, bool scheduled);

  /// Accepts "vanilla", "top<m>", "prophet", "prophet-sched".
  static Policy parse(std::string_view name, const PlannerConfig& planner);
  static std::string_view valid_names();

  std::string name() const;
  bool uses_planner() const;
};

struct SimulationOptions {
  double plan_fraction = 0.5;  // Plan duration as a fraction of the block's A2A
  std::vector<int> capture_timelines;

  void validate() const;
};

/// Ratio of balance degrees before/after. `perfectly_balanced` marks a zero
/// spread afterwards from a non-zero spread before; `value` is then infinite.
struct BalanceRatio {
  double value = 1.0;
  bool perfectly_balanced = false;
};

/// Population standard deviation of a per-device load vector.
double balance_degree(std::span<const Count> computed);

BalanceRatio rb_ratio(const DeviceLoads& before, const DeviceLoads& after);

struct LayerRow {
  int iteration = 0;
  int layer = 0;
  int selected = 0;  // s
  int excluded = 0;  // n
  LayerCost cost;
  double plan_time = 0.0;
  double sigma_before = 0.0;
  double sigma_after = 0.0;
  BalanceRatio rb;
};

struct IterationRow {
  int iteration = 0;
  double makespan = 0.0;
  double baseline_makespan = 0.0;  // VanillaEP on the same loads
  PhaseTotals phases;
  bool rebalanced = false;  // some layer used a non-empty placement
};

struct RunReport {
  std::string policy;
  std::string baseline = "vanilla";
  std::vector<LayerRow> layers;
  std::vector<IterationRow> iterations;
  std::vector<IterationTimeline> timelines;

  double mean_makespan() const;
  double mean_baseline_makespan() const;
  /// baseline / policy over the whole run.
  double speedup() const;
  PhaseTotals phase_totals() const;
};

RunReport run(std::span<const TraceRecord> trace, const Policy& policy, const ClusterSpec& cluster,
              const ModelSpec& model, const SimulationOptions& options = {});

struct SweepJob {
  std::span<const TraceRecord> trace;
  Policy policy;
  ClusterSpec cluster;
  ModelSpec model;
  SimulationOptions options;
};

/// Runs independent jobs across OpenMP threads; results keep job order.
std::vector<RunReport> run_sweep(std::span<const SweepJob> jobs);

/// Single-threaded reference for run_sweep.
std::vector<RunReport> run_sweep_serial(std::span<const SweepJob> jobs);

}  // namespace moebal
