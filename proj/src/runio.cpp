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

#include "scengen/runio.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scengen {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

std::string unique_run_dir(const std::string& base) {
  if (!fs::exists(base)) return base;
  for (int i = 2;; ++i) {
    const std::string candidate = base + "_" + std::to_string(i);
    if (!fs::exists(candidate)) return candidate;
  }
}

namespace {

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

}  // namespace

std::string metrics_to_csv(const std::vector<EpochRecord>& records) {
  std::ostringstream out;
  out << "epoch,mean_reward,collision_rate,entropy,grad_norm\n";
  for (const auto& r : records) {
    out << r.epoch << ',' << format_double(r.mean_reward) << ','
        << format_double(r.collision_rate()) << ',' << format_double(r.mean_entropy) << ','
        << format_double(r.grad_norm) << '\n';
  }
  return out.str();
}

std::string ranked_specs_to_csv(const RankedSpecs& ranked, const ScenarioGraph& graph) {
  std::ostringstream out;
  out << "rank,reward";
  for (const auto& b : graph.blocks) out << ',' << b.name;
  out << ",log_prob,entropy\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& [spec, reward] = ranked[i];
    out << (i + 1) << ',' << format_double(reward);
    for (Eigen::Index k = 0; k < spec.physical_values.size(); ++k) {
      out << ',' << format_double(spec.physical_values[k]);
    }
    out << ',' << format_double(spec.log_prob) << ',' << format_double(spec.entropy) << '\n';
  }
  return out.str();
}

RunResult run_training(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool independent) {
  cfg.validate();
  const fs::path run_dir = out_dir;
  fs::create_directories(run_dir / "checkpoints");

  RunResult result;
  result.run_dir = run_dir.string();
  result.graph = independent ? strip_parents(cfg.graph()) : cfg.graph();

  const StateSampler sampler = cfg.sampler();
  const int input_dim = 2 * cfg.encode.waypoints + 1;
  result.params =
      PolicyParams::init(result.graph, cfg.policy, input_dim, cfg.train.seed);

  write_file((run_dir / "config.json").string(), config_to_json(cfg));
  {
    json manifest;
    manifest["version"] = kVersion;
    manifest["config_hash"] = config_hash(cfg);
    manifest["seed"] = cfg.train.seed;
    manifest["scenario"] = result.graph.name;
    manifest["independent"] = independent;
    write_file((run_dir / "manifest.json").string(), manifest.dump(2));
  }

  std::ofstream metrics((run_dir / "metrics.csv").string(), std::ios::binary);
  if (!metrics) throw ConfigError("cannot write metrics log in '" + out_dir + "'");
  metrics << "epoch,mean_reward,collision_rate,entropy,grad_norm\n";

  EpochCallbacks callbacks;
  callbacks.on_epoch = [&](const PolicyParams& params, const EpochRecord& record) {
    std::ostringstream name;
    name << "epoch_" << std::setw(4) << std::setfill('0') << record.epoch << ".json";
    save_checkpoint((run_dir / "checkpoints" / name.str()).string(), params, result.graph);
    metrics << record.epoch << ',' << format_double(record.mean_reward) << ','
            << format_double(record.collision_rate()) << ','
            << format_double(record.mean_entropy) << ',' << format_double(record.grad_norm)
            << '\n';
    metrics.flush();
  };

  result.records = train(result.params, result.graph, sampler, cfg.sim, cfg.reward, cfg.train,
                         callbacks);
  save_checkpoint((run_dir / "checkpoints" / "final.json").string(), result.params,
                  result.graph);
  return result;
}

}  // namespace scengen
