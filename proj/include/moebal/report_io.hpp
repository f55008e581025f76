// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#pragma once

#include <string>
#include <vector>

#include "moebal/simulator.hpp"

namespace moebal {

/// Full run report: summary, per-iteration rows and per-layer rows.
std::string report_to_json(const RunReport& report);

/// One row per (iteration, layer). Columns, in order:
///   iteration, layer, selected, excluded, a2a, fec, bec, trans, agg, ptrans,
///   pagg, total_unscheduled, total_scheduled, plan, sigma_before,
///   sigma_after, rb, iteration_makespan, baseline_makespan
/// Times are seconds; rb is "inf" for a perfectly balanced result.
std::string report_to_csv(const RunReport& report);

struct ComparisonRow {
  std::string policy;
  double mean_makespan = 0.0;
  double speedup = 1.0;  // vs the first report's mean makespan
  double mean_rb = 1.0;  // over finite per-layer ratios
  int perfectly_balanced = 0;
  PhaseTotals phase_share;  // fractions of total makespan
};

std::vector<ComparisonRow> compare(const std::vector<RunReport>& reports);

/// Columns: policy, mean_makespan, speedup, mean_rb, perfectly_balanced,
/// search_pct, place_pct, reduce_pct, other_pct
std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);
std::string comparison_to_text(const std::vector<ComparisonRow>& rows);

}  // namespace moebal
