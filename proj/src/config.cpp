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

#include "scengen/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scengen {

using json = nlohmann::ordered_json;

namespace {

/// Field-aware reader: every access error names the offending JSON path and
/// unknown keys are rejected.
class Section {
public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError("config field '" + path_ + "' must be an object");
  }

  ~Section() = default;

  Section child(const std::string& key) {
    used_.insert(key);
    return Section(fetch(key), path_ + "." + key);
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  template <typename T>
  void read(const std::string& key, T& out) {
    if (!has(key)) return;
    used_.insert(key);
    try {
      out = fetch(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config field '" + path_ + "." + key + "' has the wrong type");
    }
  }

  template <typename T>
  T require(const std::string& key) {
    if (!has(key)) throw ConfigError("config field '" + path_ + "." + key + "' is required");
    T out{};
    read(key, out);
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!used_.count(key)) {
        throw ConfigError("unknown config field '" + path_ + "." + key + "'");
      }
    }
  }

private:
  const json& fetch(const std::string& key) const { return node_.at(key); }

  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

void read_sim(Section s, SimConfig& sim) {
  s.read("dt", sim.dt);
  s.read("max_steps", sim.max_steps);
  s.read("ego_length", sim.ego.length);
  s.read("ego_width", sim.ego.width);
  s.read("cyclist_length", sim.cyclist.length);
  s.read("cyclist_width", sim.cyclist.width);
  s.read("vehicle_length", sim.vehicle.length);
  s.read("vehicle_width", sim.vehicle.width);
  s.read("wheelbase", sim.wheelbase);
  s.read("cross_track_gain", sim.cross_track_gain);
  s.read("longitudinal_kp", sim.longitudinal_kp);
  s.read("lookahead", sim.lookahead);
  s.read("max_steer_deg", sim.max_steer_deg);
  s.read("max_accel", sim.max_accel);
  s.read("cyclist_speed", sim.cyclist_speed);
  s.read("goal_tolerance", sim.goal_tolerance);
  if (s.has("pid")) {
    Section pid = s.child("pid");
    pid.read("kp", sim.lateral.kp);
    pid.read("ki", sim.lateral.ki);
    pid.read("kd", sim.lateral.kd);
    pid.finish();
  }
  s.finish();
}

void read_train(Section s, TrainConfig& train) {
  s.read("max_epochs", train.max_epochs);
  s.read("learning_rate", train.learning_rate);
  s.read("batch_size", train.batch_size);
  s.read("entropy_weight", train.entropy_weight);
  s.read("seed", train.seed);
  s.read("mean_baseline", train.mean_baseline);
  s.read("grad_clip", train.grad_clip);
  s.read("workers", train.workers);
  if (s.has("adam")) {
    Section adam = s.child("adam");
    adam.read("beta1", train.adam.beta1);
    adam.read("beta2", train.adam.beta2);
    adam.read("epsilon", train.adam.epsilon);
    adam.finish();
  }
  s.finish();
}

}  // namespace

void ExperimentConfig::validate() const {
  if (scenario.empty()) throw ConfigError("config field 'scenario.preset' is required");
  build_preset(scenario);  // throws on unknown names
  train.validate();
  if (!(sim.dt > 0.0)) throw ConfigError("sim.dt must be > 0");
  if (sim.max_steps < 1) throw ConfigError("sim.max_steps must be >= 1");
  for (double d : {sim.ego.length, sim.ego.width, sim.cyclist.length, sim.cyclist.width,
                   sim.vehicle.length, sim.vehicle.width, sim.wheelbase}) {
    if (!(d > 0.0)) throw ConfigError("sim dimensions must be > 0");
  }
  if (speed_lo_kmh > speed_hi_kmh) throw ConfigError("env.speed_range must be ordered");
  if (repeats < 1) throw ConfigError("experiment.repeats must be >= 1");
  for (const auto& r : routes) route_preset(r);  // throws on unknown names
}

ScenarioGraph ExperimentConfig::graph() const { return build_preset(scenario); }

StateSampler ExperimentConfig::sampler() const {
  StateSampler s;
  if (routes.empty()) {
    s.routes = training_routes();
  } else {
    for (const auto& name : routes) s.routes.push_back(route_preset(name));
  }
  s.speed_lo_kmh = speed_lo_kmh;
  s.speed_hi_kmh = speed_hi_kmh;
  s.encode = encode;
  return s;
}

std::vector<double> ExperimentConfig::effective_grid_steps() const {
  if (!grid_steps.empty()) return grid_steps;
  const auto g = graph();
  if (g.block_count() == 4) return {4.0, 3.0, 20.0, 10.0};
  if (g.block_count() == 3) return {4.0, 3.0, 1.0};
  throw ConfigError("no default grid steps for a " + std::to_string(g.block_count()) +
                    "-block graph; set baselines.grid_steps");
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  Section root(doc, "config");
  {
    if (!root.has("scenario")) throw ConfigError("config field 'scenario.preset' is required");
    Section scenario = root.child("scenario");
    cfg.scenario = scenario.require<std::string>("preset");
    scenario.finish();
  }
  if (root.has("policy")) {
    Section policy = root.child("policy");
    policy.read("hidden_state", cfg.policy.hidden_state);
    policy.read("hidden_action", cfg.policy.hidden_action);
    policy.read("sigma_floor", cfg.policy.sigma_floor);
    policy.finish();
  }
  if (root.has("sim")) read_sim(root.child("sim"), cfg.sim);
  if (root.has("reward")) {
    Section reward = root.child("reward");
    reward.read("collision_bonus", cfg.reward.collision_bonus);
    reward.read("occupancy_penalty", cfg.reward.occupancy_penalty);
    reward.read("occupancy_threshold", cfg.reward.occupancy_threshold);
    reward.finish();
  }
  if (root.has("train")) read_train(root.child("train"), cfg.train);
  if (root.has("env")) {
    Section env = root.child("env");
    env.read("routes", cfg.routes);
    if (env.has("speed_range")) {
      std::vector<double> range;
      env.read("speed_range", range);
      if (range.size() != 2) throw ConfigError("config field 'config.env.speed_range' needs two values");
      cfg.speed_lo_kmh = range[0];
      cfg.speed_hi_kmh = range[1];
    }
    env.read("encode_waypoints", cfg.encode.waypoints);
    env.read("encode_scale", cfg.encode.length_scale);
    env.finish();
    cfg.encode.speed_lo_kmh = cfg.speed_lo_kmh;
    cfg.encode.speed_hi_kmh = cfg.speed_hi_kmh;
  }
  if (root.has("baselines")) {
    Section baselines = root.child("baselines");
    baselines.read("grid_steps", cfg.grid_steps);
    baselines.finish();
  }
  if (root.has("experiment")) {
    Section experiment = root.child("experiment");
    experiment.read("repeats", cfg.repeats);
    experiment.finish();
  }
  root.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["scenario"]["preset"] = cfg.scenario;
  auto& policy = doc["policy"];
  policy["hidden_state"] = cfg.policy.hidden_state;
  policy["hidden_action"] = cfg.policy.hidden_action;
  policy["sigma_floor"] = cfg.policy.sigma_floor;
  auto& sim = doc["sim"];
  sim["dt"] = cfg.sim.dt;
  sim["max_steps"] = cfg.sim.max_steps;
  sim["ego_length"] = cfg.sim.ego.length;
  sim["ego_width"] = cfg.sim.ego.width;
  sim["cyclist_length"] = cfg.sim.cyclist.length;
  sim["cyclist_width"] = cfg.sim.cyclist.width;
  sim["vehicle_length"] = cfg.sim.vehicle.length;
  sim["vehicle_width"] = cfg.sim.vehicle.width;
  sim["wheelbase"] = cfg.sim.wheelbase;
  sim["pid"]["kp"] = cfg.sim.lateral.kp;
  sim["pid"]["ki"] = cfg.sim.lateral.ki;
  sim["pid"]["kd"] = cfg.sim.lateral.kd;
  sim["cross_track_gain"] = cfg.sim.cross_track_gain;
  sim["longitudinal_kp"] = cfg.sim.longitudinal_kp;
  sim["lookahead"] = cfg.sim.lookahead;
  sim["max_steer_deg"] = cfg.sim.max_steer_deg;
  sim["max_accel"] = cfg.sim.max_accel;
  sim["cyclist_speed"] = cfg.sim.cyclist_speed;
  sim["goal_tolerance"] = cfg.sim.goal_tolerance;
  auto& reward = doc["reward"];
  reward["collision_bonus"] = cfg.reward.collision_bonus;
  reward["occupancy_penalty"] = cfg.reward.occupancy_penalty;
  reward["occupancy_threshold"] = cfg.reward.occupancy_threshold;
  auto& train = doc["train"];
  train["max_epochs"] = cfg.train.max_epochs;
  train["learning_rate"] = cfg.train.learning_rate;
  train["batch_size"] = cfg.train.batch_size;
  train["entropy_weight"] = cfg.train.entropy_weight;
  train["seed"] = cfg.train.seed;
  train["mean_baseline"] = cfg.train.mean_baseline;
  train["grad_clip"] = cfg.train.grad_clip;
  train["workers"] = cfg.train.workers;
  train["adam"]["beta1"] = cfg.train.adam.beta1;
  train["adam"]["beta2"] = cfg.train.adam.beta2;
  train["adam"]["epsilon"] = cfg.train.adam.epsilon;
  auto& env = doc["env"];
  env["routes"] = cfg.routes;
  env["speed_range"] = {cfg.speed_lo_kmh, cfg.speed_hi_kmh};
  env["encode_waypoints"] = cfg.encode.waypoints;
  env["encode_scale"] = cfg.encode.length_scale;
  doc["baselines"]["grid_steps"] = cfg.grid_steps;
  doc["experiment"]["repeats"] = cfg.repeats;
  return doc.dump(2);
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = config_to_json(cfg);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << hash;
  return out.str();
}

}  // namespace scengen
