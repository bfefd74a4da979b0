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

#ifndef SCENGEN_TRAINER_HPP
#define SCENGEN_TRAINER_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "scengen/policy.hpp"
#include "scengen/routes.hpp"
#include "scengen/scenario_graph.hpp"
#include "scengen/sim.hpp"
#include "scengen/types.hpp"

namespace scengen {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct TrainConfig {
  int max_epochs = 100;          // E
  double learning_rate = 0.008;  // alpha
  int batch_size = 16;           // N
  double entropy_weight = 1e-3;  // lambda
  std::uint64_t seed = 1;
  bool mean_baseline = false;    // subtract the batch-mean reward
  double grad_clip = 10.0;       // global norm
  int workers = 1;
  AdamConfig adam;

  void validate() const;
};

/// Uniform draw of (route, target speed) for one episode.
struct StateSampler {
  std::vector<Route> routes;
  double speed_lo_kmh = 20.0;
  double speed_hi_kmh = 50.0;
  EncodeConfig encode;
};

struct EpochRecord {
  int epoch = 0;  // 1-based
  double mean_reward = 0.0;
  int collision_count = 0;
  int batch_size = 0;
  double mean_entropy = 0.0;
  double grad_norm = 0.0;  // pre-clipping

  double collision_rate() const {
    return batch_size > 0 ? static_cast<double>(collision_count) / batch_size : 0.0;
  }
};

/// Adam in the gradient-ascent direction.
struct AdamState {
  Vec m, v;
  long t = 0;

  explicit AdamState(int dim) : m(Vec::Zero(dim)), v(Vec::Zero(dim)) {}
  void ascend(Vec& theta, const Vec& grad, double alpha, const AdamConfig& cfg);
};

using SimulateFn =
    std::function<RolloutResult(const ScenarioSpec&, const EnvState&, const ScenarioGraph&,
                                const SimConfig&, const RewardConfig&)>;

/// Deterministic per-item RNG seed; makes batches reproducible regardless of
/// worker count.
std::uint64_t derive_item_seed(std::uint64_t seed, int epoch, int item);

/// Uniform route choice and uniform target speed over [lo, hi].
EnvState sample_env_state(const StateSampler& sampler, std::mt19937_64& rng);

/// Per-sample rollout products kept for the gradient assembly.
struct BatchItem {
  PolicySample sample;
  double reward = 0.0;
  bool collision = false;
  Vec grad_logp;
  Vec grad_entropy;
};

/// (1/N) sum_i R_i * grad_logp_i + lambda * (1/N) sum_i grad_entropy_i.
/// With mean_baseline, R_i is replaced by R_i - mean(R).
Vec assemble_gradient(const std::vector<BatchItem>& items, double entropy_weight,
                      bool mean_baseline);

struct EpochCallbacks {
  std::function<void(const PolicyParams&, const EpochRecord&)> on_epoch;
};

/// One REINFORCE epoch: N rollouts, gradient assembly, clipped Adam ascent.
/// Throws NumericError (leaving params untouched) if the gradient is not
/// finite.
EpochRecord train_epoch(PolicyParams& params, const ScenarioGraph& graph,
                        const StateSampler& sampler, const SimConfig& sim_cfg,
                        const RewardConfig& reward_cfg, const TrainConfig& cfg,
                        int epoch, AdamState& adam,
                        const SimulateFn& sim_fn = simulate);

/// Full training loop over cfg.max_epochs epochs.
std::vector<EpochRecord> train(PolicyParams& params, const ScenarioGraph& graph,
                               const StateSampler& sampler, const SimConfig& sim_cfg,
                               const RewardConfig& reward_cfg, const TrainConfig& cfg,
                               const EpochCallbacks& callbacks = {},
                               const SimulateFn& sim_fn = simulate);

}  // namespace scengen

#endif  // SCENGEN_TRAINER_HPP
