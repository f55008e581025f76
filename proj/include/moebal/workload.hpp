// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <cstdint>
#include <vector>

#include "moebal/core.hpp"

namespace moebal {

struct TraceRecord {
  int iteration = 0;
  int layer = 0;
  LoadMatrix counts;

  bool operator==(const TraceRecord&) const = default;
};

/// Synthetic gating traces: Zipf-like expert popularity that drifts slowly
/// across iterations.
///
/// Each layer draws a random popularity ranking; expert share is proportional
/// to 1 / rank^skew. Every iteration a fraction `drift` of the distribution is
/// replaced by a fresh draw around the current ranking (Gamma noise with shape
/// `noise_shape`), and with probability `drift` two adjacent ranks swap. With
/// drift = 0 the per-expert totals never change.
struct GeneratorConfig {
  int num_devices = 8;
  int num_experts = 8;
  Count inputs_per_iteration = 8192;  // I, split evenly over devices
  int top_k = 1;
  double skew = 1.4;
  double drift = 0.05;  // rho
  double noise_shape = 20.0;
  std::uint64_t seed = 1;

  void validate() const;
};

std::vector<TraceRecord> generate_trace(const GeneratorConfig& config, int iterations, int layers);

/// Pearson correlation of the per-expert totals of two matrices.
/// Constant vectors score 1 when both are constant and equal, otherwise 0.
double locality_score(const LoadMatrix& a, const LoadMatrix& b);

/// Mean locality_score over adjacent iterations of each layer.
double mean_adjacent_locality(const std::vector<TraceRecord>& trace);

}  // namespace moebal
