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

#include "scengen/policy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scengen/nn.hpp"

namespace scengen {

using json = nlohmann::ordered_json;

PolicyLayout::PolicyLayout(const ScenarioGraph& graph, const PolicyConfig& cfg, int input)
    : input_dim(input), hidden_state(cfg.hidden_state), hidden_action(cfg.hidden_action) {
  graph.validate();
  int offset = 0;
  auto take = [&offset](int n) {
    const int at = offset;
    offset += n;
    return at;
  };
  state_W = take(hidden_state * input_dim);
  state_b = take(hidden_state);
  for (int k = 0; k < graph.block_count(); ++k) {
    const int parents = static_cast<int>(graph.blocks[k].parents.size());
    parent_counts.push_back(parents);
    HeadSpan h;
    h.in_dim = hidden_state + parents;
    h.W = take(hidden_action * h.in_dim);
    h.b = take(hidden_action);
    h.mu_w = take(hidden_action);
    h.mu_b = take(1);
    h.sig_w = take(hidden_action);
    h.sig_b = take(1);
    heads.push_back(h);
  }
  total = offset;
}

Eigen::Map<const Mat> PolicyParams::state_W() const {
  return {theta.data() + layout.state_W, layout.hidden_state, layout.input_dim};
}
Eigen::Map<const Vec> PolicyParams::state_b() const {
  return {theta.data() + layout.state_b, layout.hidden_state};
}
Eigen::Map<const Mat> PolicyParams::head_W(int k) const {
  const auto& h = layout.heads[k];
  return {theta.data() + h.W, layout.hidden_action, h.in_dim};
}
Eigen::Map<const Vec> PolicyParams::head_b(int k) const {
  return {theta.data() + layout.heads[k].b, layout.hidden_action};
}
Eigen::Map<const Vec> PolicyParams::mu_w(int k) const {
  return {theta.data() + layout.heads[k].mu_w, layout.hidden_action};
}
Eigen::Map<const Vec> PolicyParams::sig_w(int k) const {
  return {theta.data() + layout.heads[k].sig_w, layout.hidden_action};
}

namespace {

/// Fills [at, at + rows*cols) with U[-1/sqrt(fan_in), 1/sqrt(fan_in)].
void fan_in_init(Vec& theta, int at, int count, int fan_in, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (int i = 0; i < count; ++i) theta[at + i] = dist(rng);
}

}  // namespace

PolicyParams PolicyParams::init(const ScenarioGraph& graph, const PolicyConfig& cfg,
                                int input_dim, std::uint64_t seed) {
  PolicyParams p = zeros(graph, cfg, input_dim);
  p.init_seed = seed;
  std::mt19937_64 rng(seed);
  const auto& lay = p.layout;
  fan_in_init(p.theta, lay.state_W, lay.hidden_state * lay.input_dim, lay.input_dim, rng);
  fan_in_init(p.theta, lay.state_b, lay.hidden_state, lay.input_dim, rng);
  for (const auto& h : lay.heads) {
    fan_in_init(p.theta, h.W, lay.hidden_action * h.in_dim, h.in_dim, rng);
    fan_in_init(p.theta, h.b, lay.hidden_action, h.in_dim, rng);
    fan_in_init(p.theta, h.mu_w, lay.hidden_action, lay.hidden_action, rng);
    fan_in_init(p.theta, h.mu_b, 1, lay.hidden_action, rng);
    fan_in_init(p.theta, h.sig_w, lay.hidden_action, lay.hidden_action, rng);
    fan_in_init(p.theta, h.sig_b, 1, lay.hidden_action, rng);
  }
  return p;
}

PolicyParams PolicyParams::zeros(const ScenarioGraph& graph, const PolicyConfig& cfg,
                                 int input_dim) {
  PolicyParams p;
  p.layout = PolicyLayout(graph, cfg, input_dim);
  p.config = cfg;
  p.theta = Vec::Zero(p.layout.total);
  return p;
}

namespace {

void check_shapes(const PolicyParams& params, const EnvState* state,
                  const ScenarioGraph& graph) {
  const int blocks = graph.block_count();
  if (static_cast<int>(params.layout.heads.size()) != blocks) {
    throw ConfigError("policy has " + std::to_string(params.layout.heads.size()) +
                      " heads but graph '" + graph.name + "' has " + std::to_string(blocks) +
                      " blocks");
  }
  for (int k = 0; k < blocks; ++k) {
    const int parents = static_cast<int>(graph.blocks[k].parents.size());
    if (params.layout.parent_counts[k] != parents) {
      throw ConfigError("head '" + graph.blocks[k].name + "' expects " +
                        std::to_string(params.layout.parent_counts[k]) + " parents, graph has " +
                        std::to_string(parents));
    }
  }
  if (state != nullptr && state->encoded.size() != params.layout.input_dim) {
    throw ConfigError("encoded state length " + std::to_string(state->encoded.size()) +
                      " does not match policy input dim " +
                      std::to_string(params.layout.input_dim));
  }
}

Vec head_input(const Vec& state_hidden, const Vec& raw_actions,
               const std::vector<int>& parents) {
  Vec u(state_hidden.size() + static_cast<Eigen::Index>(parents.size()));
  u.head(state_hidden.size()) = state_hidden;
  for (std::size_t j = 0; j < parents.size(); ++j) {
    u[state_hidden.size() + static_cast<Eigen::Index>(j)] = raw_actions[parents[j]];
  }
  return u;
}

struct HeadOut {
  Vec hidden;
  double mu, sigma, sigma_preact;
};

HeadOut run_head(const PolicyParams& params, int k, const Vec& u) {
  HeadOut out;
  out.hidden = dense_tanh(params.head_W(k), u, params.head_b(k));
  out.mu = params.mu_w(k).dot(out.hidden) + params.mu_b(k);
  out.sigma_preact = params.sig_w(k).dot(out.hidden) + params.sig_b(k);
  out.sigma = std::max(softplus(out.sigma_preact), params.config.sigma_floor);
  return out;
}

}  // namespace

PolicyForward evaluate_actions(const PolicyParams& params, const Vec& encoded_state,
                               const ScenarioGraph& graph, const Vec& raw_actions) {
  check_shapes(params, nullptr, graph);
  if (encoded_state.size() != params.layout.input_dim) {
    throw ConfigError("encoded state length does not match policy input dim");
  }
  const int blocks = graph.block_count();
  if (raw_actions.size() != blocks) {
    throw ConfigError("raw action vector length does not match block count");
  }

  PolicyForward fwd;
  fwd.state_hidden = dense_tanh(params.state_W(), encoded_state, params.state_b());
  fwd.mu.resize(blocks);
  fwd.sigma.resize(blocks);
  fwd.sigma_preact.resize(blocks);
  fwd.head_hidden.resize(params.layout.hidden_action, blocks);
  for (int k = 0; k < blocks; ++k) {
    const Vec u = head_input(fwd.state_hidden, raw_actions, graph.parent_indices(k));
    const HeadOut h = run_head(params, k, u);
    fwd.head_hidden.col(k) = h.hidden;
    fwd.mu[k] = h.mu;
    fwd.sigma[k] = h.sigma;
    fwd.sigma_preact[k] = h.sigma_preact;
    fwd.log_prob += gaussian_log_pdf(raw_actions[k], h.mu, h.sigma);
    fwd.entropy += gaussian_entropy(h.sigma);
  }
  return fwd;
}

PolicySample sample(const PolicyParams& params, const EnvState& state,
                    const ScenarioGraph& graph, std::mt19937_64& rng) {
  check_shapes(params, &state, graph);
  const int blocks = graph.block_count();
  for (const auto& b : graph.blocks) {
    if (b.kind == BlockKind::kDiscrete) {
      throw ConfigError("block '" + b.name +
                        "' is discrete; sampling supports continuous blocks only");
    }
  }

  PolicySample out;
  out.mu.resize(blocks);
  out.sigma.resize(blocks);
  out.eps.resize(blocks);
  out.spec.raw_actions.resize(blocks);
  out.spec.physical_values.resize(blocks);

  const Vec state_hidden = dense_tanh(params.state_W(), state.encoded, params.state_b());
  std::normal_distribution<double> standard_normal(0.0, 1.0);
  for (int k = 0; k < blocks; ++k) {
    const Vec u = head_input(state_hidden, out.spec.raw_actions, graph.parent_indices(k));
    const HeadOut h = run_head(params, k, u);
    const double eps = standard_normal(rng);
    out.mu[k] = h.mu;
    out.sigma[k] = h.sigma;
    out.eps[k] = eps;
    out.spec.raw_actions[k] = h.mu + h.sigma * eps;
    out.spec.physical_values[k] = rescale(out.spec.raw_actions[k], graph.blocks[k]);
  }
  out.spec.log_prob = log_prob(out);
  out.spec.entropy = entropy(out);
  return out;
}

double log_prob(const PolicySample& sample) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < sample.mu.size(); ++k) {
    if (!(sample.sigma[k] > 0.0)) {
      throw NumericError("non-positive sigma in log_prob at block " + std::to_string(k));
    }
    total += gaussian_log_pdf(sample.spec.raw_actions[k], sample.mu[k], sample.sigma[k]);
  }
  return total;
}

double entropy(const PolicySample& sample) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < sample.mu.size(); ++k) {
    if (!(sample.sigma[k] > 0.0)) {
      throw NumericError("non-positive sigma in entropy at block " + std::to_string(k));
    }
    total += gaussian_entropy(sample.sigma[k]);
  }
  return total;
}

namespace {

/// Shared backward pass. Per block k the caller supplies d(objective)/d(mu_k)
/// and d(objective)/d(sigma_k); gradients flow through the heads and the
/// state encoder while the recorded actions stay fixed.
Vec backprop(const PolicyParams& params, const Vec& encoded_state, const ScenarioGraph& graph,
             const Vec& raw_actions, const PolicyForward& fwd, const Vec& d_mu,
             const Vec& d_sigma, const char* what) {
  const auto& lay = params.layout;
  Vec grad = Vec::Zero(lay.total);
  Vec d_state_hidden = Vec::Zero(lay.hidden_state);

  for (int k = 0; k < graph.block_count(); ++k) {
    const auto& span = lay.heads[k];
    // sigma = max(softplus(z), floor): no gradient once the floor binds
    const bool floored = softplus(fwd.sigma_preact[k]) < params.config.sigma_floor;
    const double dz = floored ? 0.0 : d_sigma[k] * sigmoid(fwd.sigma_preact[k]);
    const Vec hidden = fwd.head_hidden.col(k);

    grad.segment(span.mu_w, lay.hidden_action) = d_mu[k] * hidden;
    grad[span.mu_b] = d_mu[k];
    grad.segment(span.sig_w, lay.hidden_action) = dz * hidden;
    grad[span.sig_b] = dz;

    const Vec d_hidden = d_mu[k] * params.mu_w(k) + dz * params.sig_w(k);
    const Vec d_pre = d_hidden.array() * (1.0 - hidden.array().square());
    if (!d_pre.allFinite()) {
      throw NumericError(std::string(what) + ": non-finite gradient in head '" +
                         graph.blocks[k].name + "'");
    }
    const Vec u = head_input(fwd.state_hidden, raw_actions, graph.parent_indices(k));
    Eigen::Map<Mat>(grad.data() + span.W, lay.hidden_action, span.in_dim) =
        d_pre * u.transpose();
    grad.segment(span.b, lay.hidden_action) = d_pre;

    // into the shared encoder; parent-action inputs are constants
    d_state_hidden += params.head_W(k).leftCols(lay.hidden_state).transpose() * d_pre;
  }

  const Vec d_pre_state = d_state_hidden.array() * (1.0 - fwd.state_hidden.array().square());
  if (!d_pre_state.allFinite()) {
    throw NumericError(std::string(what) + ": non-finite gradient in state encoder");
  }
  Eigen::Map<Mat>(grad.data() + lay.state_W, lay.hidden_state, lay.input_dim) =
      d_pre_state * encoded_state.transpose();
  grad.segment(lay.state_b, lay.hidden_state) = d_pre_state;
  return grad;
}

}  // namespace

Vec grad_log_prob(const PolicyParams& params, const PolicySample& sample,
                  const EnvState& state, const ScenarioGraph& graph) {
  const PolicyForward fwd =
      evaluate_actions(params, state.encoded, graph, sample.spec.raw_actions);
  const int blocks = graph.block_count();
  Vec d_mu(blocks), d_sigma(blocks);
  for (int k = 0; k < blocks; ++k) {
    const double sigma = fwd.sigma[k];
    const double centered = sample.spec.raw_actions[k] - fwd.mu[k];
    d_mu[k] = centered / (sigma * sigma);
    d_sigma[k] = centered * centered / (sigma * sigma * sigma) - 1.0 / sigma;
  }
  return backprop(params, state.encoded, graph, sample.spec.raw_actions, fwd, d_mu, d_sigma,
                  "grad_log_prob");
}

Vec grad_entropy(const PolicyParams& params, const EnvState& state,
                 const ScenarioGraph& graph, const PolicySample& sample) {
  const PolicyForward fwd =
      evaluate_actions(params, state.encoded, graph, sample.spec.raw_actions);
  const int blocks = graph.block_count();
  const Vec d_mu = Vec::Zero(blocks);
  Vec d_sigma(blocks);
  for (int k = 0; k < blocks; ++k) d_sigma[k] = 1.0 / fwd.sigma[k];
  return backprop(params, state.encoded, graph, sample.spec.raw_actions, fwd, d_mu, d_sigma,
                  "grad_entropy");
}

std::string checkpoint_to_json(const PolicyParams& params, const ScenarioGraph& graph) {
  json doc;
  doc["format"] = "scengen-checkpoint";
  doc["version"] = 1;
  doc["graph"] = json::parse(graph_to_json(graph));
  doc["input_dim"] = params.layout.input_dim;
  doc["hidden_state"] = params.layout.hidden_state;
  doc["hidden_action"] = params.layout.hidden_action;
  doc["sigma_floor"] = params.config.sigma_floor;
  doc["init_seed"] = params.init_seed;
  doc["theta"] = std::vector<double>(params.theta.data(), params.theta.data() + params.theta.size());
  return doc.dump();
}

void checkpoint_from_json(const std::string& text, PolicyParams& params, ScenarioGraph& graph) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "scengen-checkpoint" ||
        doc.at("version").get<int>() != 1) {
      throw ConfigError("unsupported checkpoint format/version");
    }
    graph = graph_from_json(doc.at("graph").dump());
    PolicyConfig cfg;
    cfg.hidden_state = doc.at("hidden_state").get<int>();
    cfg.hidden_action = doc.at("hidden_action").get<int>();
    cfg.sigma_floor = doc.at("sigma_floor").get<double>();
    params = PolicyParams::zeros(graph, cfg, doc.at("input_dim").get<int>());
    params.init_seed = doc.at("init_seed").get<std::uint64_t>();
    const auto values = doc.at("theta").get<std::vector<double>>();
    if (static_cast<int>(values.size()) != params.layout.total) {
      throw ConfigError("checkpoint has " + std::to_string(values.size()) +
                        " parameters, layout expects " + std::to_string(params.layout.total));
    }
    params.theta = Eigen::Map<const Vec>(values.data(), values.size());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const std::string& path, const PolicyParams& params,
                     const ScenarioGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write checkpoint '" + path + "'");
  out << checkpoint_to_json(params, graph);
}

void load_checkpoint(const std::string& path, PolicyParams& params, ScenarioGraph& graph) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read checkpoint '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  checkpoint_from_json(buf.str(), params, graph);
}

}  // namespace scengen
