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

#ifndef SCENGEN_RUNIO_HPP
#define SCENGEN_RUNIO_HPP

#include <string>
#include <vector>

#include "scengen/config.hpp"
#include "scengen/metrics.hpp"

namespace scengen {

inline constexpr const char* kVersion = "scengen 0.1.0";

/// Orchestration of one training run: run directory with the normalized
/// config, a manifest (config hash, seed, version), per-epoch checkpoints
/// and the metrics CSV. Reruns with the same config and seed produce a
/// byte-identical metrics log.
struct RunResult {
  std::string run_dir;
  PolicyParams params;
  ScenarioGraph graph;
  std::vector<EpochRecord> records;
};

RunResult run_training(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool independent = false);

std::string metrics_to_csv(const std::vector<EpochRecord>& records);

/// Ranked (reward-descending) scenario list as CSV, one row per scenario.
std::string ranked_specs_to_csv(const RankedSpecs& ranked, const ScenarioGraph& graph);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Fresh run directory: `base` itself if unused, otherwise base_2, base_3, ...
std::string unique_run_dir(const std::string& base);

}  // namespace scengen

#endif  // SCENGEN_RUNIO_HPP
