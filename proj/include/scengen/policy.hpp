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

#ifndef SCENGEN_POLICY_HPP
#define SCENGEN_POLICY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scengen/scenario_graph.hpp"
#include "scengen/types.hpp"

namespace scengen {

struct PolicyConfig {
  int hidden_state = 64;      // width of the shared state encoder
  int hidden_action = 32;     // width of each per-block head
  double sigma_floor = 1e-3;  // lower bound on every sigma
};

/// Offsets of every weight tensor inside the flat parameter vector.
/// The state encoder maps the encoded state to hidden_state units (tanh);
/// head k maps [state hidden; parent raw actions] to hidden_action units
/// (tanh) followed by affine mu and sigma pre-activation outputs.
struct PolicyLayout {
  int input_dim = 0;
  int hidden_state = 0;
  int hidden_action = 0;
  std::vector<int> parent_counts;

  struct HeadSpan {
    int W, b, mu_w, mu_b, sig_w, sig_b;  // offsets
    int in_dim;                          // hidden_state + parent count
  };
  int state_W = 0;
  int state_b = 0;
  std::vector<HeadSpan> heads;
  int total = 0;

  PolicyLayout() = default;
  PolicyLayout(const ScenarioGraph& graph, const PolicyConfig& cfg, int input_dim);
};

/// Flat parameter vector plus the layout that interprets it. All Map
/// accessors alias `theta`.
struct PolicyParams {
  PolicyLayout layout;
  PolicyConfig config;
  Vec theta;
  std::uint64_t init_seed = 0;

  static PolicyParams init(const ScenarioGraph& graph, const PolicyConfig& cfg,
                           int input_dim, std::uint64_t seed);
  /// Zero weights everywhere (every head then outputs mu=0, sigma=softplus(0)).
  static PolicyParams zeros(const ScenarioGraph& graph, const PolicyConfig& cfg,
                            int input_dim);

  Eigen::Map<const Mat> state_W() const;
  Eigen::Map<const Vec> state_b() const;
  Eigen::Map<const Mat> head_W(int k) const;
  Eigen::Map<const Vec> head_b(int k) const;
  Eigen::Map<const Vec> mu_w(int k) const;
  double mu_b(int k) const { return theta[layout.heads[k].mu_b]; }
  Eigen::Map<const Vec> sig_w(int k) const;
  double sig_b(int k) const { return theta[layout.heads[k].sig_b]; }
};

/// Conditional Gaussian parameters realized along the chain for one set of
/// raw actions, plus the intermediates needed for backpropagation.
struct PolicyForward {
  Vec mu, sigma, sigma_preact;
  Vec state_hidden;          // tanh output of the state encoder
  Mat head_hidden;           // hidden_action x block_count
  double log_prob = 0.0;
  double entropy = 0.0;
};

/// One sampled scenario with everything needed for gradient replay.
struct PolicySample {
  ScenarioSpec spec;
  Vec mu, sigma, eps;  // a_k = mu_k + sigma_k * eps_k exactly
};

/// Evaluates mu_k, sigma_k, log-probability and entropy for fixed raw
/// actions (the chain conditions each head on the given parent actions).
PolicyForward evaluate_actions(const PolicyParams& params, const Vec& encoded_state,
                               const ScenarioGraph& graph, const Vec& raw_actions);

/// Draws one scenario: blocks in topological order, head k conditioned on the
/// state encoding and its parents' already-sampled raw actions.
/// Discrete blocks are rejected with ConfigError.
PolicySample sample(const PolicyParams& params, const EnvState& state,
                    const ScenarioGraph& graph, std::mt19937_64& rng);

/// Joint log-density of the recorded actions under the recorded (mu, sigma).
double log_prob(const PolicySample& sample);

/// Joint differential entropy of the realized conditional chain.
double entropy(const PolicySample& sample);

/// d log pi(a | s) / d theta with the recorded actions held fixed
/// (score-function gradient; no gradient flows through parent actions).
Vec grad_log_prob(const PolicyParams& params, const PolicySample& sample,
                  const EnvState& state, const ScenarioGraph& graph);

/// d H / d theta for the entropy of the realized conditional chain.
Vec grad_entropy(const PolicyParams& params, const EnvState& state,
                 const ScenarioGraph& graph, const PolicySample& sample);

/// Checkpoint round trip. The file embeds the graph, layer shapes, a format
/// version and the init seed; load validates shapes against the graph.
std::string checkpoint_to_json(const PolicyParams& params, const ScenarioGraph& graph);
void checkpoint_from_json(const std::string& text, PolicyParams& params,
                          ScenarioGraph& graph);
void save_checkpoint(const std::string& path, const PolicyParams& params,
                     const ScenarioGraph& graph);
void load_checkpoint(const std::string& path, PolicyParams& params,
                     ScenarioGraph& graph);

}  // namespace scengen

#endif  // SCENGEN_POLICY_HPP
