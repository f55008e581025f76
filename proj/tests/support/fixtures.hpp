// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include "moebal/core.hpp"
#include "moebal/planner.hpp"
#include "moebal/workload.hpp"

namespace moebal::testing {

// Same shape as configs/default.json: 8 KiB activations, 32 MB experts,
// 10 GB/s links, compute-bound experts.
inline ClusterSpec default_cluster(int devices) { return {devices, 1.0e10, 1.0e5}; }

inline ModelSpec default_model(int experts, int blocks) {
  return {experts, blocks, 1, 8192, 3.2e7, 3.2e7, 0.010, 0.020};
}

inline PlannerConfig default_planner() { return {1, 0.25, 1, false}; }

inline GeneratorConfig skewed_generator(int devices, std::uint64_t seed) {
  GeneratorConfig g;
  g.num_devices = devices;
  g.num_experts = devices;
  g.inputs_per_iteration = 1024 * devices;
  g.skew = 1.4;
  g.drift = 0.05;
  g.seed = seed;
  return g;
}

inline GeneratorConfig uniform_generator(int devices, std::uint64_t seed) {
  GeneratorConfig g = skewed_generator(devices, seed);
  g.skew = 0.0;
  g.drift = 0.0;
  return g;
}

}  // namespace moebal::testing
