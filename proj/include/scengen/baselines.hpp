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

#ifndef SCENGEN_BASELINES_HPP
#define SCENGEN_BASELINES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scengen/trainer.hpp"

namespace scengen {

struct GridSpec {
  std::vector<double> steps;  // per block, block units
  long cap = 1'000'000;       // refuse larger Cartesian products
};

/// Axis points for one block under the half-open convention:
/// lo + j*step for j = 0.. while the point stays below hi.
std::vector<double> grid_axis_points(const BlockDef& block, double step);

using RankedSpecs = std::vector<std::pair<ScenarioSpec, double>>;

/// Simulates every combination of axis points, returned sorted by reward
/// (descending; ties broken by the physical values so the result does not
/// depend on enumeration order).
RankedSpecs grid_search(const ScenarioGraph& graph, const EnvState& state,
                        const GridSpec& grid, const SimConfig& sim_cfg,
                        const RewardConfig& reward_cfg, int workers = 1,
                        const SimulateFn& sim_fn = simulate);

/// Uniform independent draws of every block over its physical range.
RankedSpecs random_sampling(const ScenarioGraph& graph, const EnvState& state,
                            int count, std::mt19937_64& rng,
                            const SimConfig& sim_cfg, const RewardConfig& reward_cfg,
                            const SimulateFn& sim_fn = simulate);

/// Same contract as train(), but every head conditions on the state encoding
/// only (the graph is stripped of parent edges first). Returns the stripped
/// graph alongside the trained parameters.
struct IndependentTrainResult {
  ScenarioGraph graph;
  PolicyParams params;
  std::vector<EpochRecord> records;
};
IndependentTrainResult independent_policy_train(
    const ScenarioGraph& graph, const PolicyConfig& policy_cfg,
    const StateSampler& sampler, const SimConfig& sim_cfg,
    const RewardConfig& reward_cfg, const TrainConfig& cfg,
    const EpochCallbacks& callbacks = {}, const SimulateFn& sim_fn = simulate);

/// Fixed hand-authored scenario per family, independent of the input state.
ScenarioSpec human_design(const ScenarioGraph& graph);

}  // namespace scengen

#endif  // SCENGEN_BASELINES_HPP
