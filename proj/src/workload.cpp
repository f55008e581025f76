// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The moebal Authors

#include "moebal/workload.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>

namespace moebal {
namespace {

using Rng = boost::random::mt19937_64;

// Boost distributions keep traces bit-identical across standard libraries.
void shuffle(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    boost::random::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(v[i - 1], v[pick(rng)]);
  }
}

std::vector<double> zipf_shares(const std::vector<int>& rank_of, double skew) {
  std::vector<double> p(rank_of.size());
  for (std::size_t e = 0; e < p.size(); ++e) {
    p[e] = 1.0 / std::pow(static_cast<double>(rank_of[e] + 1), skew);
  }
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= sum;
  return p;
}

// Largest-remainder rounding; ties go to the lower expert index.
std::vector<Count> apportion(const std::vector<double>& shares, Count total) {
  const std::size_t n = shares.size();
  std::vector<Count> out(n);
  std::vector<std::pair<double, std::size_t>> remainders(n);
  Count assigned = 0;
  for (std::size_t e = 0; e < n; ++e) {
    const double exact = shares[e] * static_cast<double>(total);
    out[e] = static_cast<Count>(std::floor(exact));
    assigned += out[e];
    remainders[e] = {exact - static_cast<double>(out[e]), e};
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) out[remainders[i % n].second] += 1;
  return out;
}

// Deals the routed inputs to source devices without replacement, so both
// the per-device row sums and the per-expert totals are exact.
LoadMatrix deal(const std::vector<Count>& expert_totals, int devices, Count per_device, Rng& rng) {
  std::vector<int> slots;
  slots.reserve(static_cast<std::size_t>(per_device) * devices);
  for (std::size_t e = 0; e < expert_totals.size(); ++e) {
    slots.insert(slots.end(), static_cast<std::size_t>(expert_totals[e]), static_cast<int>(e));
  }
  shuffle(slots, rng);
  LoadMatrix m(devices, static_cast<int>(expert_totals.size()));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    m.at(static_cast<int>(i / static_cast<std::size_t>(per_device)), slots[i]) += 1;
  }
  return m;
}

struct LayerState {
  std::vector<int> rank_of;  // expert -> popularity rank
  std::vector<double> shares;
};

}  // namespace

void GeneratorConfig::validate() const {
  if (num_devices < 2) throw Error(ErrorCode::kInvalidArgument, "num_devices must be >= 2");
  if (num_experts < 1) throw Error(ErrorCode::kInvalidArgument, "num_experts must be >= 1");
  if (inputs_per_iteration <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "inputs_per_iteration must be > 0");
  }
  if (inputs_per_iteration % num_devices != 0) {
    throw Error(ErrorCode::kInvalidArgument, "inputs_per_iteration must be divisible by num_devices");
  }
  if (top_k < 1 || top_k > num_experts) {
    throw Error(ErrorCode::kInvalidArgument, "top_k must be in [1, num_experts]");
  }
  if (!(skew >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "skew must be >= 0");
  if (!(drift >= 0.0 && drift <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "rho must be in [0, 1]");
  if (!(noise_shape > 0.0)) throw Error(ErrorCode::kInvalidArgument, "noise_shape must be > 0");
}

std::vector<TraceRecord> generate_trace(const GeneratorConfig& config, int iterations, int layers) {
  config.validate();
  if (iterations < 0 || layers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need iterations >= 0 and layers >= 1");
  }
  Rng rng(config.seed);
  const int experts = config.num_experts;
  const Count per_device = config.inputs_per_iteration / config.num_devices * config.top_k;
  const Count routed = per_device * config.num_devices;

  std::vector<LayerState> state(layers);
  for (auto& s : state) {
    s.rank_of.resize(experts);
    std::iota(s.rank_of.begin(), s.rank_of.end(), 0);
    shuffle(s.rank_of, rng);
    s.shares = zipf_shares(s.rank_of, config.skew);
  }

  boost::random::bernoulli_distribution<double> swap_ranks(config.drift);
  boost::random::gamma_distribution<double> noise(config.noise_shape, 1.0 / config.noise_shape);
  boost::random::uniform_int_distribution<int> pick_rank(0, std::max(experts - 2, 0));

  std::vector<TraceRecord> trace;
  trace.reserve(static_cast<std::size_t>(iterations) * layers);
  for (int it = 0; it < iterations; ++it) {
    for (int l = 0; l < layers; ++l) {
      auto& s = state[l];
      if (it > 0 && config.drift > 0.0) {
        if (experts > 1 && swap_ranks(rng)) {
          const int r = pick_rank(rng);
          auto a = std::find(s.rank_of.begin(), s.rank_of.end(), r);
          auto b = std::find(s.rank_of.begin(), s.rank_of.end(), r + 1);
          std::iter_swap(a, b);
        }
        auto fresh = zipf_shares(s.rank_of, config.skew);
        double sum = 0.0;
        for (auto& q : fresh) sum += (q *= noise(rng));
        for (int e = 0; e < experts; ++e) {
          s.shares[e] = (1.0 - config.drift) * s.shares[e] + config.drift * fresh[e] / sum;
        }
      }
      trace.push_back({it, l, deal(apportion(s.shares, routed), config.num_devices, per_device, rng)});
    }
  }
  return trace;
}

double locality_score(const LoadMatrix& a, const LoadMatrix& b) {
  if (a.num_experts() != b.num_experts()) {
    throw Error(ErrorCode::kDimensionMismatch, "locality_score needs equal expert counts");
  }
  const auto x = a.expert_totals();
  const auto y = b.expert_totals();
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = static_cast<double>(x[i]) - mx;
    const double dy = static_cast<double>(y[i]) - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return (sxx == 0.0 && syy == 0.0 && x == y) ? 1.0 : 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double mean_adjacent_locality(const std::vector<TraceRecord>& trace) {
  std::map<int, const LoadMatrix*> previous;  // layer -> last seen matrix
  double sum = 0.0;
  std::size_t pairs = 0;
  for (const auto& r : trace) {
    auto it = previous.find(r.layer);
    if (it != previous.end()) {
      sum += locality_score(*it->second, r.counts);
      ++pairs;
    }
    previous[r.layer] = &r.counts;
  }
  return pairs == 0 ? 1.0 : sum / static_cast<double>(pairs);
}

}  // namespace moebal
