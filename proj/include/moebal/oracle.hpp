// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <cstddef>

#include "moebal/core.hpp"
#include "moebal/perf_model.hpp"

namespace moebal {

/// Which exclusion sets the exhaustive search may pick for a selected expert.
enum class ExclusionSpace {
  BottomK,  // the fixed set the greedy planner would use
  Free,     // any n devices other than the expert's home
};

struct OracleResult {
  ExpertPlacement placement;
  double cost = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr int kOracleMaxExperts = 5;

/// Exhaustive minimum of the modeled layer time over every expert subset and
/// exclusion choice. Selected experts are listed in ascending order; ties keep
/// the first placement in (subset mask, exclusion choice) order.
/// Enumeration is split across OpenMP threads by subset.
OracleResult brute_force_best(const LoadMatrix& load, int excluded, const ClusterSpec& cluster,
                              const ModelSpec& model, bool scheduled,
                              ExclusionSpace space = ExclusionSpace::Free);

/// Single-threaded reference of brute_force_best.
OracleResult brute_force_best_serial(const LoadMatrix& load, int excluded, const ClusterSpec& cluster,
                                     const ModelSpec& model, bool scheduled,
                                     ExclusionSpace space = ExclusionSpace::Free);

}  // namespace moebal
