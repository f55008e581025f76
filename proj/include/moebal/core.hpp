// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "moebal/error.hpp"

namespace moebal {

using Count = std::int64_t;

struct ClusterSpec {
  int num_devices = 0;
  double avg_bandwidth = 0.0;       // bytes / s
  double compute_throughput = 0.0;  // inputs / s

  void validate() const;
};

struct ModelSpec {
  int num_experts = 0;
  int num_blocks = 1;
  int top_k = 1;
  double input_bytes = 0.0;
  double expert_param_bytes = 0.0;
  double expert_grad_bytes = 0.0;
  double fnec_time = 0.0;  // forward non-expert compute, seconds
  double bnec_time = 0.0;  // backward non-expert compute, seconds

  void validate() const;
};

/// Routed-input counts for one layer of one iteration. Row d holds the inputs
/// resident on device d, column e the inputs selecting expert e.
class LoadMatrix {
 public:
  LoadMatrix() = default;
  LoadMatrix(int num_devices, int num_experts);
  LoadMatrix(int num_devices, int num_experts, std::vector<Count> counts);
  static LoadMatrix from_rows(const std::vector<std::vector<Count>>& rows);

  int num_devices() const noexcept { return devices_; }
  int num_experts() const noexcept { return experts_; }

  Count at(int device, int expert) const { return counts_[index(device, expert)]; }
  Count& at(int device, int expert) { return counts_[index(device, expert)]; }

  std::span<const Count> row(int device) const;
  std::span<const Count> values() const noexcept { return counts_; }

  Count row_sum(int device) const;
  std::vector<Count> expert_totals() const;
  Count total() const;

  bool operator==(const LoadMatrix&) const = default;

 private:
  std::size_t index(int device, int expert) const {
    return static_cast<std::size_t>(device) * static_cast<std::size_t>(experts_) +
           static_cast<std::size_t>(expert);
  }

  int devices_ = 0;
  int experts_ = 0;
  std::vector<Count> counts_;
};

/// Lightweight expert placement. Expert e lives at rest on device e; a
/// selected expert is additionally replicated to every device except its
/// `excluded` set.
class ExpertPlacement {
 public:
  ExpertPlacement() = default;

  static ExpertPlacement empty(int num_devices, int num_experts);

  /// Builds replicas from the selection list. `excluded[i]` lists the devices
  /// that selected[i] is not transferred to; it must not contain the home.
  static ExpertPlacement from_selection(int num_devices, int num_experts,
                                        std::vector<int> selected,
                                        std::vector<std::vector<int>> excluded);

  int num_devices() const noexcept { return devices_; }
  int num_experts() const noexcept { return static_cast<int>(replicas_.size()); }

  static int home(int expert) noexcept { return expert; }

  bool holds(int expert, int device) const;
  const std::vector<int>& replicas(int expert) const { return replicas_.at(expert); }
  const std::vector<int>& selected() const noexcept { return selected_; }
  const std::vector<std::vector<int>>& excluded() const noexcept { return excluded_; }
  int num_selected() const noexcept { return static_cast<int>(selected_.size()); }

  /// Keeps only the first `count` selections.
  ExpertPlacement truncated(int count) const;

  bool operator==(const ExpertPlacement&) const = default;

 private:
  int devices_ = 0;
  std::vector<std::vector<int>> replicas_;  // sorted device lists
  std::vector<int> selected_;
  std::vector<std::vector<int>> excluded_;
};

struct DeviceLoads {
  std::vector<Count> computed;  // H: inputs computed per device
  std::vector<Count> received;  // R: inputs received from other devices

  bool operator==(const DeviceLoads&) const = default;
};

/// Routes every (device, expert) batch: computed locally when the device
/// holds a replica, otherwise shipped to the expert's home device.
DeviceLoads derive_loads(const LoadMatrix& load, const ExpertPlacement& placement);

}  // namespace moebal
