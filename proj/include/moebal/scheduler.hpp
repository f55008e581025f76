// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "moebal/core.hpp"
#include "moebal/perf_model.hpp"

namespace moebal {

// Trans and Agg are the unsplit primitives; they appear where no host window
// exists and in the serialized baseline timeline.
enum class OpKind { A2A, FEC, BEC, FNEC, BNEC, Plan, Trans, SubTrans1, SubTrans2, Agg, SubAgg1, SubAgg2 };
enum class Lane { Compute, Network };

std::string_view to_string(OpKind kind);
std::string_view to_string(Lane lane);
Lane lane_of(OpKind kind);

struct ScheduledOp {
  OpKind kind;
  int block;
  int iteration;
  Lane lane;
  double start;
  double duration;

  double end() const { return start + duration; }
};

struct TransferSplit {
  double first = 0.0;
  double second = 0.0;
};

/// Trans of the next block: the second part fills the non-expert forward
/// window, the remainder rides on the expert forward compute.
TransferSplit partition_trans(double trans_time, double fec_time, double fnec_time);

/// Agg of the later block: the first part fills the non-expert backward
/// window, the remainder rides on the expert backward compute.
TransferSplit partition_agg(double agg_time, double bec_time, double bnec_time);

struct PhaseTotals {
  double search = 0.0;  // exposed Plan
  double place = 0.0;   // exposed Trans
  double reduce = 0.0;  // exposed Agg
  double other = 0.0;

  double total() const { return search + place + reduce + other; }
};

class IterationTimeline {
 public:
  IterationTimeline() = default;
  IterationTimeline(int iteration, std::vector<ScheduledOp> ops);

  int iteration() const noexcept { return iteration_; }
  const std::vector<ScheduledOp>& ops() const noexcept { return ops_; }

  double makespan() const;

  /// Seconds of `op` not covered by any op in the other lane.
  double exposed(const ScheduledOp& op) const;

  /// Exposed seconds of every op of `kinds` belonging to `block`.
  double exposed_for(std::span<const OpKind> kinds, int block) const;
  double exposed_trans(int block) const;
  double exposed_agg(int block) const;

  /// Network-lane seconds with nothing running on the compute lane.
  double exposed_communication() const;

  PhaseTotals phase_totals() const;

 private:
  int iteration_ = 0;
  std::vector<ScheduledOp> ops_;
};

/// Block-wise overlapped schedule for one iteration. `plan_times[b]` is the
/// Plan duration of block b for the next iteration (0 when no search runs).
IterationTimeline build_iteration_timeline(std::span<const LayerCost> per_block_costs,
                                           std::span<const double> plan_times,
                                           const ModelSpec& model, int iteration = 0);

IterationTimeline build_iteration_timeline(std::span<const LayerCost> per_block_costs,
                                           double plan_time, const ModelSpec& model,
                                           int iteration = 0);

/// Every primitive run back to back with the layer work, no overlap.
IterationTimeline build_serial_timeline(std::span<const LayerCost> per_block_costs,
                                        std::span<const double> plan_times,
                                        const ModelSpec& model, int iteration = 0);

}  // namespace moebal
