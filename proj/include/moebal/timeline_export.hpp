// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <string>

#include "moebal/scheduler.hpp"

namespace moebal {

/// {"iteration": j, "makespan": s, "ops": [{"kind", "lane", "block",
/// "iteration", "start", "duration"}, ...]}
std::string timeline_to_json(const IterationTimeline& timeline);

/// Two-lane Gantt chart, x axis in milliseconds, one CSS class per op kind.
std::string timeline_to_svg(const IterationTimeline& timeline);

}  // namespace moebal
