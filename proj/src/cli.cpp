// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "moebal/config.hpp"
#include "moebal/report_io.hpp"
#include "moebal/simulator.hpp"
#include "moebal/timeline_export.hpp"
#include "moebal/trace_io.hpp"
#include "moebal/workload.hpp"

namespace moebal::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out;
  std::string trace;
  std::vector<std::string> policies;
  std::string cluster;
  std::string model;
  std::vector<int> gantt;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<int> n;
  std::optional<int> reuse_interval;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

ConfigFile optional_config(const std::string& path) {
  return path.empty() ? ConfigFile{} : load_config(path);
}

// Cluster, model and planner settings from --config, then --cluster/--model
// files, then individual flags.
struct SimSetup {
  ClusterSpec cluster;
  ModelSpec model;
  PlannerConfig planner;
  SimulationOptions simulation;
};

SimSetup resolve_setup(const Options& o) {
  const ConfigFile base = optional_config(o.config);
  SimSetup s;
  std::optional<ClusterSpec> cluster = base.cluster;
  std::optional<ModelSpec> model = base.model;
  if (!o.cluster.empty()) {
    cluster = load_config(o.cluster).cluster;
    if (!cluster) throw Error(ErrorCode::kInvalidArgument, "field 'cluster': missing in " + o.cluster);
  }
  if (!o.model.empty()) {
    model = load_config(o.model).model;
    if (!model) throw Error(ErrorCode::kInvalidArgument, "field 'model': missing in " + o.model);
  }
  if (!cluster) throw Error(ErrorCode::kInvalidArgument, "field 'cluster': required (--config or --cluster)");
  if (!model) throw Error(ErrorCode::kInvalidArgument, "field 'model': required (--config or --model)");
  s.cluster = *cluster;
  s.model = *model;
  s.planner = base.planner.value_or(PlannerConfig{});
  s.simulation = base.simulation.value_or(SimulationOptions{});
  if (o.alpha) s.planner.alpha = *o.alpha;
  if (o.n) s.planner.excluded_devices = *o.n;
  if (o.reuse_interval) s.planner.reuse_interval = *o.reuse_interval;
  s.planner.validate(s.cluster);
  return s;
}

std::vector<Policy> parse_policies(const std::vector<std::string>& names, const PlannerConfig& planner) {
  std::vector<Policy> out;
  for (const auto& raw : names) {
    std::stringstream ss(raw);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) out.push_back(Policy::parse(name, planner));
    }
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no policy given; valid: " + std::string(Policy::valid_names()));
  return out;
}

int cmd_generate(const Options& o, std::ostream& out) {
  const ConfigFile cfg = load_config(o.config);
  if (!cfg.generator) throw Error(ErrorCode::kInvalidArgument, "field 'generator': required section missing");
  GeneratorSettings g = *cfg.generator;
  if (o.seed) g.config.seed = *o.seed;
  spdlog::info("generating {} iterations x {} layers (D={}, E={})", g.iterations, g.layers,
               g.config.num_devices, g.config.num_experts);
  const auto trace = generate_trace(g.config, g.iterations, g.layers);
  const fs::path path(o.out);
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  write_trace(trace, path);
  out << "devices=" << g.config.num_devices << " experts=" << g.config.num_experts
      << " iterations=" << g.iterations << " layers=" << g.layers
      << " mean_locality=" << mean_adjacent_locality(trace) << '\n';
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const SimSetup s = resolve_setup(o);
  const auto policies = parse_policies(o.policies, s.planner);
  if (policies.size() != 1) throw Error(ErrorCode::kInvalidArgument, "simulate takes exactly one --policy");
  const auto trace = read_trace(fs::path(o.trace));
  SimulationOptions options = s.simulation;
  options.capture_timelines = o.gantt;

  const RunReport report = run(trace, policies.front(), s.cluster, s.model, options);
  const fs::path dir(o.out);
  ensure_dir(dir);
  write_file(dir / "report.json", report_to_json(report));
  write_file(dir / "report.csv", report_to_csv(report));
  for (const auto& tl : report.timelines) {
    const std::string stem = "timeline_iter" + std::to_string(tl.iteration());
    write_file(dir / (stem + ".svg"), timeline_to_svg(tl));
    write_file(dir / (stem + ".json"), timeline_to_json(tl));
  }
  for (int j : o.gantt) {
    if (j < 0 || j >= static_cast<int>(report.iterations.size())) {
      spdlog::warn("--gantt iteration {} is outside the trace", j);
    }
  }
  out << report.policy << ": mean makespan " << report.mean_makespan() * 1e3 << " ms, speedup vs "
      << report.baseline << ' ' << report.speedup() << '\n';
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const SimSetup s = resolve_setup(o);
  const auto policies = parse_policies(o.policies, s.planner);
  const auto trace = read_trace(fs::path(o.trace));

  std::vector<SweepJob> jobs;
  for (const auto& p : policies) jobs.push_back({trace, p, s.cluster, s.model, s.simulation});
  const auto reports = run_sweep(jobs);
  const auto rows = compare(reports);

  const fs::path dir(o.out);
  ensure_dir(dir);
  const std::string text = comparison_to_text(rows);
  write_file(dir / "comparison.csv", comparison_to_csv(rows));
  write_file(dir / "comparison.txt", text);
  out << text;
  return kOk;
}

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("moebal", sink);
  const char* level = std::getenv("MOEBAL_LOG");
  logger->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
  spdlog::set_default_logger(logger);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  configure_logging(err);
  CLI::App app{"Expert-parallel MoE load-balancing planner and simulator", "moebal"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Write a synthetic gating trace (JSON Lines)");
  gen->add_option("--config", o.config, "Config file with a 'generator' section")->required();
  gen->add_option("--out", o.out, "Output trace path")->required();
  gen->add_option("--seed", o.seed, "Override generator.seed");

  auto add_sim_flags = [&](CLI::App* cmd) {
    cmd->add_option("--trace", o.trace, "Input trace (JSON Lines)")->required();
    cmd->add_option("--config", o.config, "Config file (cluster/model/planner/simulation sections)");
    cmd->add_option("--cluster", o.cluster, "Config file holding the 'cluster' section");
    cmd->add_option("--model", o.model, "Config file holding the 'model' section");
    cmd->add_option("--out", o.out, "Output directory")->required();
    cmd->add_option("--alpha", o.alpha, "Balance coefficient");
    cmd->add_option("--n", o.n, "Devices each selected expert is not sent to");
    cmd->add_option("--reuse-interval", o.reuse_interval, "Search every F iterations");
    cmd->add_option("--seed", o.seed, "Accepted for symmetry; simulation is deterministic");
  };

  auto* sim = app.add_subcommand("simulate", "Replay a trace under one policy");
  add_sim_flags(sim);
  sim->add_option("--policy", o.policies, std::string("Policy: ") + std::string(Policy::valid_names()))
      ->required();
  sim->add_option("--gantt", o.gantt, "Iterations to export as SVG/JSON timelines");

  auto* cmp = app.add_subcommand("compare", "Replay a trace under several policies");
  add_sim_flags(cmp);
  cmp->add_option("--policy", o.policies, "Policies, repeated or comma separated; the first is the reference")
      ->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (*gen) return cmd_generate(o, out);
    if (*sim) return cmd_simulate(o, out);
    return cmd_compare(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIo ? kIoError : kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace moebal::cli
