// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace moebal {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kPrecondition: return "precondition violated";
    case ErrorCode::kTooLarge: return "instance too large";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(line ? "line " + std::to_string(*line) + ": " + what : what),
      code_(code),
      line_(line) {}

void ClusterSpec::validate() const {
  if (num_devices < 2) {
    throw Error(ErrorCode::kInvalidArgument, "num_devices must be >= 2");
  }
  if (!(avg_bandwidth > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "avg_bandwidth must be > 0");
  }
  if (!(compute_throughput > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "compute_throughput must be > 0");
  }
}

void ModelSpec::validate() const {
  if (num_experts < 1) throw Error(ErrorCode::kInvalidArgument, "num_experts must be >= 1");
  if (num_blocks < 1) throw Error(ErrorCode::kInvalidArgument, "num_blocks must be >= 1");
  if (top_k < 1 || top_k > num_experts) {
    throw Error(ErrorCode::kInvalidArgument, "top_k must be in [1, num_experts]");
  }
  if (!(input_bytes > 0.0) || !(expert_param_bytes > 0.0) || !(expert_grad_bytes > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "byte sizes must be > 0");
  }
  if (fnec_time < 0.0 || bnec_time < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "non-expert compute times must be >= 0");
  }
}

LoadMatrix::LoadMatrix(int num_devices, int num_experts)
    : LoadMatrix(num_devices, num_experts,
                 std::vector<Count>(static_cast<std::size_t>(std::max(num_devices, 0)) *
                                    static_cast<std::size_t>(std::max(num_experts, 0)))) {}

LoadMatrix::LoadMatrix(int num_devices, int num_experts, std::vector<Count> counts)
    : devices_(num_devices), experts_(num_experts), counts_(std::move(counts)) {
  if (num_devices < 1 || num_experts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "load matrix needs at least one device and expert");
  }
  if (counts_.size() != static_cast<std::size_t>(num_devices) * static_cast<std::size_t>(num_experts)) {
    throw Error(ErrorCode::kDimensionMismatch, "load matrix storage does not match D x E");
  }
  if (std::any_of(counts_.begin(), counts_.end(), [](Count c) { return c < 0; })) {
    throw Error(ErrorCode::kInvalidArgument, "load matrix entries must be non-negative");
  }
}

LoadMatrix LoadMatrix::from_rows(const std::vector<std::vector<Count>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "load matrix has no rows");
  const auto experts = rows.front().size();
  std::vector<Count> flat;
  flat.reserve(rows.size() * experts);
  for (const auto& r : rows) {
    if (r.size() != experts) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged load matrix rows");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return {static_cast<int>(rows.size()), static_cast<int>(experts), std::move(flat)};
}

std::span<const Count> LoadMatrix::row(int device) const {
  return std::span<const Count>(counts_).subspan(index(device, 0), experts_);
}

Count LoadMatrix::row_sum(int device) const {
  auto r = row(device);
  return std::accumulate(r.begin(), r.end(), Count{0});
}

std::vector<Count> LoadMatrix::expert_totals() const {
  std::vector<Count> totals(experts_, 0);
  for (int d = 0; d < devices_; ++d) {
    for (int e = 0; e < experts_; ++e) totals[e] += at(d, e);
  }
  return totals;
}

Count LoadMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

ExpertPlacement ExpertPlacement::empty(int num_devices, int num_experts) {
  return from_selection(num_devices, num_experts, {}, {});
}

ExpertPlacement ExpertPlacement::from_selection(int num_devices, int num_experts,
                                                std::vector<int> selected,
                                                std::vector<std::vector<int>> excluded) {
  if (num_experts < 1 || num_experts > num_devices) {
    throw Error(ErrorCode::kDimensionMismatch,
                "placement needs 1 <= num_experts <= num_devices (expert e homed on device e)");
  }
  if (selected.size() != excluded.size()) {
    throw Error(ErrorCode::kInvalidArgument, "selected and excluded lists differ in length");
  }
  ExpertPlacement p;
  p.devices_ = num_devices;
  p.replicas_.resize(num_experts);
  for (int e = 0; e < num_experts; ++e) p.replicas_[e] = {home(e)};

  std::vector<bool> seen(num_experts, false);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const int e = selected[i];
    if (e < 0 || e >= num_experts) {
      throw Error(ErrorCode::kInvalidArgument, "selected expert out of range");
    }
    if (seen[e]) throw Error(ErrorCode::kInvalidArgument, "selected experts must be distinct");
    seen[e] = true;

    std::vector<bool> skip(num_devices, false);
    for (int d : excluded[i]) {
      if (d < 0 || d >= num_devices) {
        throw Error(ErrorCode::kInvalidArgument, "excluded device out of range");
      }
      if (d == home(e)) {
        throw Error(ErrorCode::kInvalidArgument, "an expert cannot be excluded from its home device");
      }
      if (skip[d]) throw Error(ErrorCode::kInvalidArgument, "duplicate excluded device");
      skip[d] = true;
    }
    auto& reps = p.replicas_[e];
    reps.clear();
    for (int d = 0; d < num_devices; ++d) {
      if (!skip[d]) reps.push_back(d);
    }
    std::sort(excluded[i].begin(), excluded[i].end());
  }
  p.selected_ = std::move(selected);
  p.excluded_ = std::move(excluded);
  return p;
}

bool ExpertPlacement::holds(int expert, int device) const {
  const auto& reps = replicas_.at(expert);
  return std::binary_search(reps.begin(), reps.end(), device);
}

ExpertPlacement ExpertPlacement::truncated(int count) const {
  const auto keep = static_cast<std::size_t>(std::clamp(count, 0, num_selected()));
  return from_selection(devices_, num_experts(),
                        {selected_.begin(), selected_.begin() + keep},
                        {excluded_.begin(), excluded_.begin() + keep});
}

DeviceLoads derive_loads(const LoadMatrix& load, const ExpertPlacement& placement) {
  if (load.num_devices() != placement.num_devices() ||
      load.num_experts() != placement.num_experts()) {
    throw Error(ErrorCode::kDimensionMismatch, "load matrix and placement dimensions differ");
  }
  const int devices = load.num_devices();
  DeviceLoads out{std::vector<Count>(devices, 0), std::vector<Count>(devices, 0)};
  for (int e = 0; e < load.num_experts(); ++e) {
    const int home = ExpertPlacement::home(e);
    for (int d = 0; d < devices; ++d) {
      const Count c = load.at(d, e);
      if (c == 0) continue;
      if (placement.holds(e, d)) {
        out.computed[d] += c;
      } else {
        out.computed[home] += c;
        out.received[home] += c;
      }
    }
  }
  return out;
}

}  // namespace moebal
