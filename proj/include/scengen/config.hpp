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

#ifndef SCENGEN_CONFIG_HPP
#define SCENGEN_CONFIG_HPP

#include <string>
#include <vector>

#include "scengen/baselines.hpp"
#include "scengen/policy.hpp"
#include "scengen/sim.hpp"
#include "scengen/trainer.hpp"

namespace scengen {

/// Everything one experiment needs. Defaults reproduce the stock cyclist
/// experiment; a config file only has to name the scenario preset.
struct ExperimentConfig {
  std::string scenario;  // preset name, required
  PolicyConfig policy;
  SimConfig sim;
  RewardConfig reward;
  TrainConfig train;
  EncodeConfig encode;
  std::vector<std::string> routes;  // route preset names; empty = training set
  double speed_lo_kmh = 20.0;
  double speed_hi_kmh = 50.0;
  std::vector<double> grid_steps;   // per block; empty = {4, 3, 20, 10} on 4 blocks
  int repeats = 30;                 // experiment repetitions for mean/stddev

  void validate() const;
  ScenarioGraph graph() const;
  StateSampler sampler() const;
  std::vector<double> effective_grid_steps() const;
};

/// Parses the JSON experiment document. Unknown keys and wrong types are
/// ConfigErrors naming the offending field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// FNV-1a over the normalized JSON form, hex-encoded; stable across reruns.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace scengen

#endif  // SCENGEN_CONFIG_HPP
