// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "moebal/core.hpp"
#include "moebal/planner.hpp"
#include "moebal/simulator.hpp"
#include "moebal/workload.hpp"

namespace moebal {

inline constexpr int kConfigSchemaVersion = 1;

struct GeneratorSettings {
  GeneratorConfig config;
  int iterations = 100;
  int layers = 1;
};

/// One JSON document, every section optional:
///   {"schema_version": 1, "cluster": {...}, "model": {...},
///    "generator": {...}, "planner": {...}, "simulation": {...}}
/// Unknown keys are rejected; errors name the offending field as
/// "section.key".
struct ConfigFile {
  std::optional<ClusterSpec> cluster;
  std::optional<ModelSpec> model;
  std::optional<GeneratorSettings> generator;
  std::optional<PlannerConfig> planner;
  std::optional<SimulationOptions> simulation;
};

ConfigFile parse_config(const std::string& text);
ConfigFile load_config(const std::filesystem::path& path);

}  // namespace moebal
