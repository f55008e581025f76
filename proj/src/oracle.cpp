// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/oracle.hpp"

#include <limits>
#include <string>
#include <vector>

#include <omp.h>

#include "moebal/planner.hpp"

namespace moebal {
namespace {

// All `k`-subsets of `pool` in lexicographic order.
void combinations(const std::vector<int>& pool, int k, std::size_t from, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    combinations(pool, k, i + 1, cur, out);
    cur.pop_back();
  }
}

struct Search {
  const LoadMatrix& load;
  int excluded;
  const ClusterSpec& cluster;
  const ModelSpec& model;
  bool scheduled;
  std::vector<std::vector<std::vector<int>>> choices;  // per expert

  struct Best {
    double cost = std::numeric_limits<double>::infinity();
    unsigned mask = 0;
    std::vector<int> pick;  // choice index per selected expert
    std::size_t evaluated = 0;
  };

  // Walks every exclusion combination of one subset in lexicographic order.
  void scan_mask(unsigned mask, Best& best) const {
    std::vector<int> experts;
    for (int e = 0; e < load.num_experts(); ++e) {
      if (mask & (1u << e)) experts.push_back(e);
    }
    const int s = static_cast<int>(experts.size());
    std::vector<int> pick(experts.size(), 0);
    while (true) {
      std::vector<std::vector<int>> excl(experts.size());
      for (int i = 0; i < s; ++i) excl[i] = choices[experts[i]][pick[i]];
      const auto placement =
          ExpertPlacement::from_selection(load.num_devices(), load.num_experts(), experts, excl);
      const auto loads = derive_loads(load, placement);
      const double cost = layer_total(
          layer_cost_scheduled(loads, s, s == 0 ? 0 : excluded, cluster, model), scheduled);
      ++best.evaluated;
      if (cost < best.cost) {
        best.cost = cost;
        best.mask = mask;
        best.pick = pick;
      }
      int i = s - 1;
      while (i >= 0 && ++pick[i] == static_cast<int>(choices[experts[i]].size())) pick[i--] = 0;
      if (i < 0) break;
    }
  }

  OracleResult finish(const Best& best) const {
    std::vector<int> experts;
    std::vector<std::vector<int>> excl;
    for (int e = 0, i = 0; e < load.num_experts(); ++e) {
      if (best.mask & (1u << e)) {
        experts.push_back(e);
        excl.push_back(choices[e][best.pick[i++]]);
      }
    }
    return {ExpertPlacement::from_selection(load.num_devices(), load.num_experts(), experts, excl),
            best.cost, best.evaluated};
  }
};

Search prepare(const LoadMatrix& load, int excluded, const ClusterSpec& cluster,
               const ModelSpec& model, bool scheduled, ExclusionSpace space) {
  cluster.validate();
  if (model.num_experts != cluster.num_devices) {
    throw Error(ErrorCode::kPrecondition, "oracle requires num_experts == num_devices");
  }
  if (model.num_experts > kOracleMaxExperts) {
    throw Error(ErrorCode::kTooLarge,
                "oracle enumerates at most D = E = " + std::to_string(kOracleMaxExperts) + ", got " +
                    std::to_string(model.num_experts));
  }
  if (load.num_devices() != cluster.num_devices || load.num_experts() != model.num_experts) {
    throw Error(ErrorCode::kDimensionMismatch, "load matrix does not match cluster/model");
  }
  if (excluded < 0 || excluded >= cluster.num_devices) {
    throw Error(ErrorCode::kInvalidArgument, "n must be in [0, D)");
  }
  Search s{load, excluded, cluster, model, scheduled, {}};
  for (int e = 0; e < model.num_experts; ++e) {
    if (space == ExclusionSpace::BottomK) {
      s.choices.push_back({bottom_devices(load, e, excluded)});
      continue;
    }
    std::vector<int> pool;
    for (int d = 0; d < cluster.num_devices; ++d) {
      if (d != ExpertPlacement::home(e)) pool.push_back(d);
    }
    std::vector<int> cur;
    auto& out = s.choices.emplace_back();
    combinations(pool, excluded, 0, cur, out);
  }
  return s;
}

}  // namespace

OracleResult brute_force_best_serial(const LoadMatrix& load, int excluded, const ClusterSpec& cluster,
                                     const ModelSpec& model, bool scheduled, ExclusionSpace space) {
  const Search search = prepare(load, excluded, cluster, model, scheduled, space);
  Search::Best best;
  const unsigned masks = 1u << model.num_experts;
  for (unsigned mask = 0; mask < masks; ++mask) search.scan_mask(mask, best);
  return search.finish(best);
}

OracleResult brute_force_best(const LoadMatrix& load, int excluded, const ClusterSpec& cluster,
                              const ModelSpec& model, bool scheduled, ExclusionSpace space) {
  const Search search = prepare(load, excluded, cluster, model, scheduled, space);
  const int masks = 1 << model.num_experts;
  std::vector<Search::Best> per_mask(static_cast<std::size_t>(masks));
#pragma omp parallel for schedule(dynamic)
  for (int mask = 0; mask < masks; ++mask) {
    search.scan_mask(static_cast<unsigned>(mask), per_mask[mask]);
  }
  // Reduce in mask order with a strict comparison, matching the serial scan.
  Search::Best best;
  std::size_t evaluated = 0;
  for (const auto& b : per_mask) {
    evaluated += b.evaluated;
    if (b.cost < best.cost) best = b;
  }
  best.evaluated = evaluated;
  return search.finish(best);
}

}  // namespace moebal
