// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/scheduler.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace moebal {
namespace {

void check_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " must be >= 0");
}

void check_lengths(std::span<const LayerCost> costs, std::span<const double> plan_times,
                   const ModelSpec& model) {
  if (static_cast<int>(costs.size()) != model.num_blocks) {
    throw Error(ErrorCode::kDimensionMismatch, "per-block cost list length != num_blocks");
  }
  if (plan_times.size() != costs.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "plan time list length != num_blocks");
  }
}

// Appends ops that start together; the slot lasts as long as the longest.
class SlotWriter {
 public:
  explicit SlotWriter(int iteration) : iteration_(iteration) {}

  struct Entry {
    OpKind kind;
    int block;
    double duration;
    int iteration_offset = 0;
  };

  void slot(Entry host, std::optional<Entry> guest = std::nullopt) {
    double length = emit(host);
    if (guest && guest->duration > 0.0) length = std::max(length, emit(*guest));
    now_ += length;
  }

  double now() const { return now_; }
  std::vector<ScheduledOp> take() { return std::move(ops_); }

 private:
  double emit(const Entry& e) {
    ops_.push_back({e.kind, e.block, iteration_ + e.iteration_offset, lane_of(e.kind), now_, e.duration});
    return e.duration;
  }

  int iteration_;
  double now_ = 0.0;
  std::vector<ScheduledOp> ops_;
};

constexpr std::array kTransKinds{OpKind::Trans, OpKind::SubTrans1, OpKind::SubTrans2};
constexpr std::array kAggKinds{OpKind::Agg, OpKind::SubAgg1, OpKind::SubAgg2};

bool is_kind(OpKind k, std::span<const OpKind> kinds) {
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::A2A: return "A2A";
    case OpKind::FEC: return "FEC";
    case OpKind::BEC: return "BEC";
    case OpKind::FNEC: return "FNEC";
    case OpKind::BNEC: return "BNEC";
    case OpKind::Plan: return "Plan";
    case OpKind::Trans: return "Trans";
    case OpKind::SubTrans1: return "SubTrans1";
    case OpKind::SubTrans2: return "SubTrans2";
    case OpKind::Agg: return "Agg";
    case OpKind::SubAgg1: return "SubAgg1";
    case OpKind::SubAgg2: return "SubAgg2";
  }
  return "?";
}

std::string_view to_string(Lane lane) { return lane == Lane::Compute ? "compute" : "network"; }

Lane lane_of(OpKind kind) {
  switch (kind) {
    case OpKind::FEC:
    case OpKind::BEC:
    case OpKind::FNEC:
    case OpKind::BNEC:
    case OpKind::Plan:
      return Lane::Compute;
    default:
      return Lane::Network;
  }
}

TransferSplit partition_trans(double trans_time, double fec_time, double fnec_time) {
  check_nonnegative(trans_time, "trans_time");
  check_nonnegative(fec_time, "fec_time");
  check_nonnegative(fnec_time, "fnec_time");
  const double second = std::min(trans_time, fnec_time);
  return {trans_time - second, second};
}

TransferSplit partition_agg(double agg_time, double bec_time, double bnec_time) {
  check_nonnegative(agg_time, "agg_time");
  check_nonnegative(bec_time, "bec_time");
  check_nonnegative(bnec_time, "bnec_time");
  const double first = std::min(agg_time, bnec_time);
  return {first, agg_time - first};
}

IterationTimeline::IterationTimeline(int iteration, std::vector<ScheduledOp> ops)
    : iteration_(iteration), ops_(std::move(ops)) {}

double IterationTimeline::makespan() const {
  double end = 0.0;
  for (const auto& op : ops_) end = std::max(end, op.end());
  return end;
}

double IterationTimeline::exposed(const ScheduledOp& op) const {
  double covered = 0.0;
  for (const auto& other : ops_) {
    if (other.lane == op.lane) continue;
    // Fully hosted: report exactly zero rather than rounding residue.
    if (other.start <= op.start && op.end() <= other.end()) return 0.0;
    const double lo = std::max(op.start, other.start);
    const double hi = std::min(op.end(), other.end());
    if (hi > lo) covered += hi - lo;
  }
  return std::max(0.0, op.duration - covered);
}

double IterationTimeline::exposed_for(std::span<const OpKind> kinds, int block) const {
  double sum = 0.0;
  for (const auto& op : ops_) {
    if (op.block == block && is_kind(op.kind, kinds)) sum += exposed(op);
  }
  return sum;
}

double IterationTimeline::exposed_trans(int block) const { return exposed_for(kTransKinds, block); }
double IterationTimeline::exposed_agg(int block) const { return exposed_for(kAggKinds, block); }

double IterationTimeline::exposed_communication() const {
  double sum = 0.0;
  for (const auto& op : ops_) {
    if (op.lane == Lane::Network) sum += exposed(op);
  }
  return sum;
}

PhaseTotals IterationTimeline::phase_totals() const {
  PhaseTotals t;
  for (const auto& op : ops_) {
    if (op.kind == OpKind::Plan) {
      t.search += exposed(op);
    } else if (is_kind(op.kind, kTransKinds)) {
      t.place += exposed(op);
    } else if (is_kind(op.kind, kAggKinds)) {
      t.reduce += exposed(op);
    }
  }
  t.other = std::max(0.0, makespan() - t.search - t.place - t.reduce);
  return t;
}

IterationTimeline build_iteration_timeline(std::span<const LayerCost> per_block_costs,
                                           std::span<const double> plan_times,
                                           const ModelSpec& model, int iteration) {
  check_lengths(per_block_costs, plan_times, model);
  const int blocks = model.num_blocks;
  const auto& cost = per_block_costs;
  SlotWriter w(iteration);

  // The first block has no earlier forward compute to hide its Trans under.
  if (cost[0].trans_time > 0.0) w.slot({OpKind::Trans, 0, cost[0].trans_time});

  for (int b = 0; b < blocks; ++b) {
    const bool has_next = b + 1 < blocks;
    const TransferSplit next = has_next ? partition_trans(cost[b + 1].trans_time, cost[b].fec_time,
                                                          model.fnec_time)
                                        : TransferSplit{};
    w.slot({OpKind::A2A, b, cost[b].a2a_time}, SlotWriter::Entry{OpKind::Plan, b, plan_times[b], 1});
    w.slot({OpKind::FEC, b, cost[b].fec_time}, SlotWriter::Entry{OpKind::SubTrans1, b + 1, next.first});
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
    w.slot({OpKind::FNEC, b, model.fnec_time}, SlotWriter::Entry{OpKind::SubTrans2, b + 1, next.second});
  }

  // Backward runs from the last block down; block b hosts the Agg of b + 1,
  // whose expert backward compute has already finished.
  for (int b = blocks - 1; b >= 0; --b) {
    const bool has_next = b + 1 < blocks;
    const TransferSplit next = has_next ? partition_agg(cost[b + 1].agg_time, cost[b].bec_time,
                                                        model.bnec_time)
                                        : TransferSplit{};
    w.slot({OpKind::BNEC, b, model.bnec_time}, SlotWriter::Entry{OpKind::SubAgg1, b + 1, next.first});
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
    w.slot({OpKind::BEC, b, cost[b].bec_time}, SlotWriter::Entry{OpKind::SubAgg2, b + 1, next.second});
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
  }

  // Nothing runs after the first block's backward pass to host its Agg.
  if (cost[0].agg_time > 0.0) w.slot({OpKind::Agg, 0, cost[0].agg_time});

  return IterationTimeline(iteration, w.take());
}

IterationTimeline build_iteration_timeline(std::span<const LayerCost> per_block_costs,
                                           double plan_time, const ModelSpec& model,
                                           int iteration) {
  const std::vector<double> plan_times(per_block_costs.size(), plan_time);
  return build_iteration_timeline(per_block_costs, plan_times, model, iteration);
}

IterationTimeline build_serial_timeline(std::span<const LayerCost> per_block_costs,
                                        std::span<const double> plan_times,
                                        const ModelSpec& model, int iteration) {
  check_lengths(per_block_costs, plan_times, model);
  const int blocks = model.num_blocks;
  const auto& cost = per_block_costs;
  SlotWriter w(iteration);
  auto optional_slot = [&](OpKind kind, int block, double duration, int offset = 0) {
    if (duration > 0.0) w.slot({kind, block, duration, offset});
  };

  for (int b = 0; b < blocks; ++b) {
    optional_slot(OpKind::Plan, b, plan_times[b], 1);
    optional_slot(OpKind::Trans, b, cost[b].trans_time);
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
    w.slot({OpKind::FEC, b, cost[b].fec_time});
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
    w.slot({OpKind::FNEC, b, model.fnec_time});
  }
  for (int b = blocks - 1; b >= 0; --b) {
    w.slot({OpKind::BNEC, b, model.bnec_time});
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
    w.slot({OpKind::BEC, b, cost[b].bec_time});
    w.slot({OpKind::A2A, b, cost[b].a2a_time});
    optional_slot(OpKind::Agg, b, cost[b].agg_time);
  }
  return IterationTimeline(iteration, w.take());
}

}  // namespace moebal
