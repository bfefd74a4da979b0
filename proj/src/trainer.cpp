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

#include "scengen/trainer.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace scengen {

void TrainConfig::validate() const {
  if (max_epochs < 1) throw ConfigError("train.max_epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("train.learning_rate must be > 0");
  if (entropy_weight < 0.0) throw ConfigError("train.entropy_weight must be >= 0");
  if (workers < 1) throw ConfigError("train.workers must be >= 1");
}

void AdamState::ascend(Vec& theta, const Vec& grad, double alpha, const AdamConfig& cfg) {
  ++t;
  m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
  v = cfg.beta2 * v.array() + (1.0 - cfg.beta2) * grad.array().square();
  const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  theta.array() += alpha * (m.array() / bias1) / ((v.array() / bias2).sqrt() + cfg.epsilon);
}

std::uint64_t derive_item_seed(std::uint64_t seed, int epoch, int item) {
  // splitmix64 over the packed triple; any fixed mixing works, it just has
  // to be stable so batches reproduce independently of the worker count.
  auto mix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  };
  return mix(seed ^ mix(static_cast<std::uint64_t>(epoch) << 32 ^
                        static_cast<std::uint64_t>(item)));
}

EnvState sample_env_state(const StateSampler& sampler, std::mt19937_64& rng) {
  if (sampler.routes.empty()) throw ConfigError("state sampler has an empty route set");
  std::uniform_int_distribution<std::size_t> route_dist(0, sampler.routes.size() - 1);
  std::uniform_real_distribution<double> speed_dist(sampler.speed_lo_kmh, sampler.speed_hi_kmh);
  const Route& route = sampler.routes[route_dist(rng)];
  const double speed = speed_dist(rng);
  return encode_state(route, speed, sampler.encode);
}

Vec assemble_gradient(const std::vector<BatchItem>& items, double entropy_weight,
                      bool mean_baseline) {
  if (items.empty()) throw ConfigError("cannot assemble a gradient from an empty batch");
  double baseline = 0.0;
  if (mean_baseline) {
    for (const auto& item : items) baseline += item.reward;
    baseline /= static_cast<double>(items.size());
  }
  Vec grad = Vec::Zero(items.front().grad_logp.size());
  for (const auto& item : items) {
    grad += (item.reward - baseline) * item.grad_logp + entropy_weight * item.grad_entropy;
  }
  grad /= static_cast<double>(items.size());
  return grad;
}

namespace {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Results must be
/// written to per-index slots; the first exception is rethrown.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  const int count = std::min(workers, n);
  threads.reserve(count);
  for (int i = 0; i < count; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

EpochRecord train_epoch(PolicyParams& params, const ScenarioGraph& graph,
                        const StateSampler& sampler, const SimConfig& sim_cfg,
                        const RewardConfig& reward_cfg, const TrainConfig& cfg, int epoch,
                        AdamState& adam, const SimulateFn& sim_fn) {
  cfg.validate();
  std::vector<BatchItem> items(cfg.batch_size);

  parallel_for(cfg.batch_size, cfg.workers, [&](int i) {
    std::mt19937_64 rng(derive_item_seed(cfg.seed, epoch, i));
    const EnvState state = sample_env_state(sampler, rng);
    BatchItem& item = items[i];
    item.sample = sample(params, state, graph, rng);
    const RolloutResult rollout = sim_fn(item.sample.spec, state, graph, sim_cfg, reward_cfg);
    item.reward = compute_reward(rollout, reward_cfg);
    item.collision = rollout.collision;
    item.grad_logp = grad_log_prob(params, item.sample, state, graph);
    item.grad_entropy = scengen::grad_entropy(params, state, graph, item.sample);
  });

  Vec grad = assemble_gradient(items, cfg.entropy_weight, cfg.mean_baseline);
  if (!grad.allFinite()) {
    throw NumericError("epoch " + std::to_string(epoch) +
                       ": non-finite gradient, parameters left unchanged");
  }
  const double norm = grad.norm();
  if (cfg.grad_clip > 0.0 && norm > cfg.grad_clip) grad *= cfg.grad_clip / norm;
  adam.ascend(params.theta, grad, cfg.learning_rate, cfg.adam);
  if (!params.theta.allFinite()) {
    throw NumericError("epoch " + std::to_string(epoch) + ": parameters became non-finite");
  }

  EpochRecord record;
  record.epoch = epoch;
  record.batch_size = cfg.batch_size;
  for (const auto& item : items) {
    record.mean_reward += item.reward;
    record.mean_entropy += item.sample.spec.entropy;
    record.collision_count += item.collision ? 1 : 0;
  }
  record.mean_reward /= cfg.batch_size;
  record.mean_entropy /= cfg.batch_size;
  record.grad_norm = norm;
  return record;
}

std::vector<EpochRecord> train(PolicyParams& params, const ScenarioGraph& graph,
                               const StateSampler& sampler, const SimConfig& sim_cfg,
                               const RewardConfig& reward_cfg, const TrainConfig& cfg,
                               const EpochCallbacks& callbacks, const SimulateFn& sim_fn) {
  cfg.validate();
  AdamState adam(params.layout.total);
  std::vector<EpochRecord> records;
  records.reserve(cfg.max_epochs);
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    records.push_back(
        train_epoch(params, graph, sampler, sim_cfg, reward_cfg, cfg, epoch, adam, sim_fn));
    if (callbacks.on_epoch) callbacks.on_epoch(params, records.back());
  }
  return records;
}

}  // namespace scengen
