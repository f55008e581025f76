// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace moebal {
namespace {

using nlohmann::json;

Error field_error(const std::string& field, const std::string& what) {
  return Error(ErrorCode::kInvalidArgument, "field '" + field + "': " + what);
}

// Reads typed fields out of one section, remembering which keys were used.
class Section {
 public:
  Section(const json& node, std::string name) : node_(node), name_(std::move(name)) {
    if (!node_.is_object()) throw field_error(name_, "must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (!node_.contains(key)) return;
    const auto& v = node_.at(key);
    const std::string field = name_ + "." + key;
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw field_error(field, "expected a boolean");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) throw field_error(field, "expected a non-negative integer");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw field_error(field, "expected an integer");
    } else {
      if (!v.is_number()) throw field_error(field, "expected a number");
    }
    out = v.get<T>();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw field_error(name_ + "." + key, "unknown key");
    }
  }

  // Re-raises a validation failure with the section name attached.
  template <typename Fn>
  void validate(Fn&& fn) const {
    try {
      fn();
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidArgument, "section '" + name_ + "': " + e.what());
    }
  }

 private:
  const json& node_;
  std::string name_;
  std::set<std::string> seen_;
};

ClusterSpec parse_cluster(const json& node) {
  Section s(node, "cluster");
  ClusterSpec c;
  s.read("num_devices", c.num_devices);
  s.read("avg_bandwidth", c.avg_bandwidth);
  s.read("compute_throughput", c.compute_throughput);
  s.finish();
  s.validate([&] { c.validate(); });
  return c;
}

ModelSpec parse_model(const json& node) {
  Section s(node, "model");
  ModelSpec m;
  s.read("num_experts", m.num_experts);
  s.read("num_blocks", m.num_blocks);
  s.read("top_k", m.top_k);
  s.read("input_bytes", m.input_bytes);
  s.read("expert_param_bytes", m.expert_param_bytes);
  s.read("expert_grad_bytes", m.expert_grad_bytes);
  s.read("fnec_time", m.fnec_time);
  s.read("bnec_time", m.bnec_time);
  s.finish();
  s.validate([&] { m.validate(); });
  return m;
}

GeneratorSettings parse_generator(const json& node) {
  Section s(node, "generator");
  GeneratorSettings g;
  s.read("num_devices", g.config.num_devices);
  s.read("num_experts", g.config.num_experts);
  s.read("inputs_per_iteration", g.config.inputs_per_iteration);
  s.read("top_k", g.config.top_k);
  s.read("skew", g.config.skew);
  s.read("rho", g.config.drift);
  s.read("noise_shape", g.config.noise_shape);
  s.read("seed", g.config.seed);
  s.read("iterations", g.iterations);
  s.read("layers", g.layers);
  s.finish();
  if (!(g.config.drift >= 0.0 && g.config.drift <= 1.0)) {
    throw field_error("generator.rho", "must be in [0, 1]");
  }
  if (g.iterations < 0) throw field_error("generator.iterations", "must be >= 0");
  if (g.layers < 1) throw field_error("generator.layers", "must be >= 1");
  s.validate([&] { g.config.validate(); });
  return g;
}

PlannerConfig parse_planner(const json& node) {
  Section s(node, "planner");
  PlannerConfig p;
  s.read("n", p.excluded_devices);
  s.read("alpha", p.alpha);
  s.read("reuse_interval", p.reuse_interval);
  s.finish();
  if (p.excluded_devices < 0) throw field_error("planner.n", "must be >= 0");
  if (!(p.alpha > 0.0)) throw field_error("planner.alpha", "must be > 0");
  if (p.reuse_interval < 1) throw field_error("planner.reuse_interval", "must be >= 1");
  return p;
}

SimulationOptions parse_simulation(const json& node) {
  Section s(node, "simulation");
  SimulationOptions o;
  s.read("plan_fraction", o.plan_fraction);
  s.finish();
  if (!(o.plan_fraction >= 0.0)) throw field_error("simulation.plan_fraction", "must be >= 0");
  return o;
}

}  // namespace

ConfigFile parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw field_error("schema_version", "missing or not an integer");
  }
  if (doc["schema_version"].get<int>() != kConfigSchemaVersion) {
    throw field_error("schema_version", "unsupported version, expected " +
                                            std::to_string(kConfigSchemaVersion));
  }
  ConfigFile cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version") continue;
    if (key == "cluster") cfg.cluster = parse_cluster(value);
    else if (key == "model") cfg.model = parse_model(value);
    else if (key == "generator") cfg.generator = parse_generator(value);
    else if (key == "planner") cfg.planner = parse_planner(value);
    else if (key == "simulation") cfg.simulation = parse_simulation(value);
    else throw field_error(key, "unknown section");
  }
  return cfg;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace moebal
