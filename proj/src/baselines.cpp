// Copyright 2026 The scengen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scengen/baselines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

namespace scengen {

std::vector<double> grid_axis_points(const BlockDef& block, double step) {
  if (!(step > 0.0)) {
    throw ConfigError("grid step for block '" + block.name + "' must be > 0");
  }
  // half-open [lo, hi): ceil(scale/step) points, with a guard against
  // floating-point spill when step divides the range exactly
  const long count = static_cast<long>(std::ceil(block.scale / step - 1e-9));
  std::vector<double> points;
  points.reserve(std::max(count, 1L));
  for (long j = 0; j < std::max(count, 1L); ++j) {
    points.push_back(block.lo() + static_cast<double>(j) * step);
  }
  return points;
}

namespace {

ScenarioSpec spec_from_physical(const ScenarioGraph& graph, const Vec& physical) {
  ScenarioSpec spec;
  spec.physical_values = physical;
  spec.raw_actions.resize(physical.size());
  for (int k = 0; k < graph.block_count(); ++k) {
    spec.raw_actions[k] = to_raw(physical[k], graph.blocks[k]);
  }
  return spec;
}

bool physical_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

void sort_by_reward(RankedSpecs& results) {
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return physical_less(a.first.physical_values, b.first.physical_values);
  });
}

}  // namespace

RankedSpecs grid_search(const ScenarioGraph& graph, const EnvState& state,
                        const GridSpec& grid, const SimConfig& sim_cfg,
                        const RewardConfig& reward_cfg, int workers,
                        const SimulateFn& sim_fn) {
  graph.validate();
  for (const auto& b : graph.blocks) {
    if (b.kind != BlockKind::kContinuous) {
      throw ConfigError("grid search requires continuous blocks ('" + b.name + "' is not)");
    }
  }
  if (grid.steps.size() != static_cast<std::size_t>(graph.block_count())) {
    throw ConfigError("grid spec has " + std::to_string(grid.steps.size()) +
                      " steps for " + std::to_string(graph.block_count()) + " blocks");
  }

  std::vector<std::vector<double>> axes;
  long combinations = 1;
  for (int k = 0; k < graph.block_count(); ++k) {
    axes.push_back(grid_axis_points(graph.blocks[k], grid.steps[k]));
    combinations *= static_cast<long>(axes.back().size());
    if (combinations > grid.cap) {
      throw ConfigError("grid has more than " + std::to_string(grid.cap) +
                        " combinations; refine the steps or raise the cap");
    }
  }

  RankedSpecs results(combinations);
  // last block fastest
  std::vector<long> strides(axes.size());
  long stride = 1;
  for (int k = graph.block_count() - 1; k >= 0; --k) {
    strides[k] = stride;
    stride *= static_cast<long>(axes[k].size());
  }

  const auto evaluate = [&](long flat) {
    Vec physical(graph.block_count());
    for (int k = 0; k < graph.block_count(); ++k) {
      const long idx = (flat / strides[k]) % static_cast<long>(axes[k].size());
      physical[k] = axes[k][static_cast<std::size_t>(idx)];
    }
    ScenarioSpec spec = spec_from_physical(graph, physical);
    const RolloutResult rollout = sim_fn(spec, state, graph, sim_cfg, reward_cfg);
    results[flat] = {std::move(spec), compute_reward(rollout, reward_cfg)};
  };
  if (workers <= 1) {
    for (long i = 0; i < combinations; ++i) evaluate(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const long i = next.fetch_add(1);
          if (i >= combinations) return;
          evaluate(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  sort_by_reward(results);
  return results;
}

RankedSpecs random_sampling(const ScenarioGraph& graph, const EnvState& state, int count,
                            std::mt19937_64& rng, const SimConfig& sim_cfg,
                            const RewardConfig& reward_cfg, const SimulateFn& sim_fn) {
  if (count < 1) throw ConfigError("random sampling needs count >= 1");
  RankedSpecs results;
  results.reserve(count);
  for (int i = 0; i < count; ++i) {
    Vec physical(graph.block_count());
    for (int k = 0; k < graph.block_count(); ++k) {
      const auto& b = graph.blocks[k];
      std::uniform_real_distribution<double> dist(b.lo(), b.hi());
      physical[k] = dist(rng);
    }
    ScenarioSpec spec = spec_from_physical(graph, physical);
    const RolloutResult rollout = sim_fn(spec, state, graph, sim_cfg, reward_cfg);
    results.emplace_back(std::move(spec), compute_reward(rollout, reward_cfg));
  }
  return results;
}

IndependentTrainResult independent_policy_train(
    const ScenarioGraph& graph, const PolicyConfig& policy_cfg, const StateSampler& sampler,
    const SimConfig& sim_cfg, const RewardConfig& reward_cfg, const TrainConfig& cfg,
    const EpochCallbacks& callbacks, const SimulateFn& sim_fn) {
  IndependentTrainResult result{strip_parents(graph),
                                PolicyParams::init(strip_parents(graph), policy_cfg,
                                                   2 * sampler.encode.waypoints + 1, cfg.seed),
                                {}};
  result.records = train(result.params, result.graph, sampler, sim_cfg, reward_cfg, cfg,
                         callbacks, sim_fn);
  return result;
}

namespace {

// Hand-authored stand-ins for the scenario-runner presets; each is tuned to
// collide with the ego at 30 km/h on its family's canonical route.
const std::map<std::string, std::vector<std::pair<std::string, double>>>& human_table() {
  static const std::map<std::string, std::vector<std::pair<std::string, double>>> table = {
      {"cyclist_crossing", {{"X", 30.0}, {"Y", 6.0}, {"Theta", 270.0}, {"D", 24.0}}},
      {"red_light_runner", {{"X", 30.0}, {"Y", 7.0}, {"V", 1.6}}},
      {"unprotected_left", {{"X", 42.0}, {"Y", 6.0}, {"V", 7.0}}},
      {"signalized_right", {{"X", 32.0}, {"Y", 8.0}, {"V", 1.8}}},
  };
  return table;
}

}  // namespace

ScenarioSpec human_design(const ScenarioGraph& graph) {
  const auto it = human_table().find(graph.name);
  if (it == human_table().end()) {
    throw ConfigError("no human-design preset for scenario '" + graph.name + "'");
  }
  Vec physical(graph.block_count());
  for (const auto& [block, value] : it->second) {
    const int idx = graph.index_of(block);
    if (idx < 0) {
      throw ConfigError("human-design preset block '" + block + "' missing from graph '" +
                        graph.name + "'");
    }
    if (value < graph.blocks[idx].lo() || value > graph.blocks[idx].hi()) {
      throw ConfigError("human-design value for '" + block + "' is outside the block range");
    }
    physical[idx] = value;
  }
  return spec_from_physical(graph, physical);
}

}  // namespace scengen
