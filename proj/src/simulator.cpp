// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <exception>
#include <limits>
#include <numeric>

#include <omp.h>

namespace moebal {
namespace {

// trace[iteration * layers + layer], validated against cluster and model.
struct TraceView {
  int iterations = 0;
  int layers = 0;
  std::vector<std::vector<LoadMatrix>> per_layer;  // [layer][iteration]
};

TraceView index_trace(std::span<const TraceRecord> trace, const ClusterSpec& cluster,
                      const ModelSpec& model) {
  if (trace.empty()) throw Error(ErrorCode::kInvalidArgument, "trace is empty");
  TraceView v;
  v.layers = model.num_blocks;
  if (trace.size() % static_cast<std::size_t>(v.layers) != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "trace layer count does not match num_blocks");
  }
  v.iterations = static_cast<int>(trace.size() / static_cast<std::size_t>(v.layers));
  v.per_layer.assign(v.layers, {});
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& r = trace[i];
    const int want_iter = static_cast<int>(i) / v.layers;
    const int want_layer = static_cast<int>(i) % v.layers;
    if (r.iteration != want_iter || r.layer != want_layer) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "trace records are not ordered iteration-major with num_blocks layers");
    }
    if (r.counts.num_devices() != cluster.num_devices || r.counts.num_experts() != model.num_experts) {
      throw Error(ErrorCode::kDimensionMismatch, "trace matrix does not match cluster/model dimensions");
    }
    v.per_layer[want_layer].push_back(r.counts);
  }
  return v;
}

ExpertPlacement top_m_placement(const LoadMatrix& load, int m) {
  const auto totals = load.expert_totals();
  std::vector<int> order(totals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return totals[a] > totals[b]; });
  order.resize(static_cast<std::size_t>(m));
  return ExpertPlacement::from_selection(load.num_devices(), load.num_experts(), order,
                                         std::vector<std::vector<int>>(order.size()));
}

}  // namespace

Policy Policy::vanilla() { return {}; }

Policy Policy::top(int m) {
  Policy p;
  p.variant = Variant::TopM;
  p.m = m;
  return p;
}

Policy Policy::prophet(PlannerConfig planner, bool scheduled) {
  Policy p;
  p.variant = scheduled ? Variant::ProProphetScheduled : Variant::ProProphetUnscheduled;
  p.planner = planner;
  p.planner.scheduled = scheduled;
  return p;
}

std::string_view Policy::valid_names() { return "vanilla, top<m> (e.g. top2, top3), prophet, prophet-sched"; }

Policy Policy::parse(std::string_view name, const PlannerConfig& planner) {
  if (name == "vanilla") return vanilla();
  if (name == "prophet") return prophet(planner, false);
  if (name == "prophet-sched") return prophet(planner, true);
  if (name.starts_with("top") && name.size() > 3) {
    int m = 0;
    const auto digits = name.substr(3);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && m >= 1) return top(m);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown policy '" + std::string(name) + "'; valid: " + std::string(valid_names()));
}

std::string Policy::name() const {
  switch (variant) {
    case Variant::VanillaEP: return "vanilla";
    case Variant::TopM: return "top" + std::to_string(m);
    case Variant::ProProphetUnscheduled: return "prophet";
    case Variant::ProProphetScheduled: return "prophet-sched";
  }
  return "?";
}

bool Policy::uses_planner() const {
  return variant == Variant::ProProphetUnscheduled || variant == Variant::ProProphetScheduled;
}

void SimulationOptions::validate() const {
  if (!(plan_fraction >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "plan_fraction must be >= 0");
}

double balance_degree(std::span<const Count> computed) {
  if (computed.empty()) return 0.0;
  const double n = static_cast<double>(computed.size());
  const double mean = std::accumulate(computed.begin(), computed.end(), 0.0) / n;
  double ss = 0.0;
  for (Count c : computed) ss += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
  return std::sqrt(ss / n);
}

BalanceRatio rb_ratio(const DeviceLoads& before, const DeviceLoads& after) {
  const double sb = balance_degree(before.computed);
  const double sa = balance_degree(after.computed);
  if (sa == 0.0) {
    if (sb == 0.0) return {1.0, false};
    return {std::numeric_limits<double>::infinity(), true};
  }
  return {sb / sa, false};
}

double RunReport::mean_makespan() const {
  if (iterations.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& it : iterations) sum += it.makespan;
  return sum / static_cast<double>(iterations.size());
}

double RunReport::mean_baseline_makespan() const {
  if (iterations.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& it : iterations) sum += it.baseline_makespan;
  return sum / static_cast<double>(iterations.size());
}

double RunReport::speedup() const {
  const double m = mean_makespan();
  return m > 0.0 ? mean_baseline_makespan() / m : 1.0;
}

PhaseTotals RunReport::phase_totals() const {
  PhaseTotals t;
  for (const auto& it : iterations) {
    t.search += it.phases.search;
    t.place += it.phases.place;
    t.reduce += it.phases.reduce;
    t.other += it.phases.other;
  }
  return t;
}

RunReport run(std::span<const TraceRecord> trace, const Policy& policy, const ClusterSpec& cluster,
              const ModelSpec& model, const SimulationOptions& options) {
  cluster.validate();
  model.validate();
  options.validate();
  if (policy.variant == Policy::Variant::TopM && (policy.m < 1 || policy.m > model.num_experts)) {
    throw Error(ErrorCode::kInvalidArgument, "TopM needs 1 <= m <= num_experts");
  }
  const TraceView view = index_trace(trace, cluster, model);
  const int devices = cluster.num_devices;
  const int experts = model.num_experts;
  const auto empty = ExpertPlacement::empty(devices, experts);

  std::vector<PlacementPlanner> planners;
  if (policy.uses_planner()) {
    for (int l = 0; l < view.layers; ++l) planners.emplace_back(policy.planner, cluster, model);
  }
  const bool overlapped = policy.variant == Policy::Variant::ProProphetScheduled;

  RunReport report;
  report.policy = policy.name();
  std::vector<LayerCost> costs(view.layers), base_costs(view.layers);
  std::vector<double> plan_times(view.layers), no_plan(view.layers, 0.0);

  for (int j = 0; j < view.iterations; ++j) {
    IterationRow row;
    row.iteration = j;
    for (int l = 0; l < view.layers; ++l) {
      const auto& history = view.per_layer[l];
      const LoadMatrix& load = history[j];

      ExpertPlacement placement;
      int excluded = 0;
      switch (policy.variant) {
        case Policy::Variant::VanillaEP:
          placement = empty;
          break;
        case Policy::Variant::TopM:
          placement = top_m_placement(load, policy.m);
          break;
        case Policy::Variant::ProProphetUnscheduled:
        case Policy::Variant::ProProphetScheduled:
          placement = planners[l].plan(std::span(history).first(j), j);
          excluded = policy.planner.excluded_devices;
          break;
      }
      const int s = placement.num_selected();
      if (s == 0) excluded = 0;

      const DeviceLoads before = derive_loads(load, empty);
      const DeviceLoads after = derive_loads(load, placement);
      costs[l] = layer_cost_scheduled(after, s, excluded, cluster, model);
      base_costs[l] = layer_cost_scheduled(before, 0, 0, cluster, model);
      // Plan for the next iteration runs during this one, off this block's A2A.
      plan_times[l] = policy.uses_planner() && planners[l].searches_at(j + 1)
                          ? options.plan_fraction * costs[l].a2a_time
                          : 0.0;

      LayerRow lr;
      lr.iteration = j;
      lr.layer = l;
      lr.selected = s;
      lr.excluded = excluded;
      lr.cost = costs[l];
      lr.plan_time = plan_times[l];
      lr.sigma_before = balance_degree(before.computed);
      lr.sigma_after = balance_degree(after.computed);
      lr.rb = rb_ratio(before, after);
      report.layers.push_back(lr);
      row.rebalanced = row.rebalanced || s > 0;
    }

    IterationTimeline timeline = overlapped ? build_iteration_timeline(costs, plan_times, model, j)
                                            : build_serial_timeline(costs, plan_times, model, j);
    row.makespan = timeline.makespan();
    row.phases = timeline.phase_totals();
    row.baseline_makespan = build_serial_timeline(base_costs, no_plan, model, j).makespan();
    report.iterations.push_back(row);

    const auto& wanted = options.capture_timelines;
    if (std::find(wanted.begin(), wanted.end(), j) != wanted.end()) {
      report.timelines.push_back(std::move(timeline));
    }
  }
  return report;
}

std::vector<RunReport> run_sweep(std::span<const SweepJob> jobs) {
  std::vector<RunReport> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const auto& job = jobs[i];
      out[i] = run(job.trace, job.policy, job.cluster, job.model, job.options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<RunReport> run_sweep_serial(std::span<const SweepJob> jobs) {
  std::vector<RunReport> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(run(job.trace, job.policy, job.cluster, job.model, job.options));
  return out;
}

}  // namespace moebal
