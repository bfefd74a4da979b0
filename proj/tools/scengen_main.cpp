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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scengen/baselines.hpp"
#include "scengen/config.hpp"
#include "scengen/metrics.hpp"
#include "scengen/runio.hpp"
#include "scengen/svg.hpp"

namespace {

using namespace scengen;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void apply_env_overrides(ExperimentConfig& cfg) {
  if (const char* seed = std::getenv("SCENGEN_SEED")) {
    cfg.train.seed = std::stoull(seed);
  }
  if (const char* workers = std::getenv("SCENGEN_WORKERS")) {
    cfg.train.workers = std::stoi(workers);
  }
}

ExperimentConfig load_with_overrides(const std::string& config_path,
                                     std::optional<std::uint64_t> seed,
                                     std::optional<int> workers) {
  ExperimentConfig cfg = load_config(config_path);
  apply_env_overrides(cfg);
  if (seed) cfg.train.seed = *seed;
  if (workers) cfg.train.workers = *workers;
  cfg.validate();
  return cfg;
}

int cmd_train(const std::string& config_path, std::string out_dir,
              std::optional<std::uint64_t> seed, std::optional<int> workers) {
  const ExperimentConfig cfg = load_with_overrides(config_path, seed, workers);
  if (out_dir.empty()) out_dir = unique_run_dir("runs/" + cfg.scenario);
  const RunResult result = run_training(cfg, out_dir);
  const double final_rate =
      collision_rate(result.records, std::min<int>(10, result.records.size()));
  std::cout << "run directory: " << result.run_dir << "\n";
  std::cout << "epochs: " << result.records.size()
            << ", final 10-epoch collision rate: " << final_rate << "\n";
  const auto stable = iterations_to_stability(result.records);
  std::cout << "iterations to stability: " << (stable ? std::to_string(*stable) : "none")
            << "\n";
  return kExitOk;
}

int cmd_eval(const std::string& checkpoint, const std::string& route_name, double speed,
             int episodes, std::uint64_t seed, const std::string& out_path) {
  if (episodes < 1) throw ConfigError("--episodes must be >= 1");
  PolicyParams params;
  ScenarioGraph graph;
  load_checkpoint(checkpoint, params, graph);

  EncodeConfig encode;
  encode.waypoints = (params.layout.input_dim - 1) / 2;
  const EnvState state = encode_state(route_preset(route_name), speed, encode);

  SimConfig sim_cfg;
  RewardConfig reward_cfg;
  std::mt19937_64 rng(seed);
  RankedSpecs ranked;
  int collisions = 0;
  double reward_sum = 0.0;
  for (int i = 0; i < episodes; ++i) {
    const PolicySample s = sample(params, state, graph, rng);
    const RolloutResult rollout = simulate(s.spec, state, graph, sim_cfg, reward_cfg);
    const double reward = compute_reward(rollout, reward_cfg);
    collisions += rollout.collision ? 1 : 0;
    reward_sum += reward;
    ranked.emplace_back(s.spec, reward);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.second > b.second; });

  std::cout << "episodes: " << episodes << "\n";
  std::cout << "collision rate: " << static_cast<double>(collisions) / episodes << "\n";
  std::cout << "mean reward: " << reward_sum / episodes << "\n";
  if (!out_path.empty()) {
    write_file(out_path, ranked_specs_to_csv(ranked, graph));
    std::cout << "ranked scenarios written to " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_baseline(const std::string& method, const std::string& config_path, int count,
                 const std::string& route_name, double speed, std::string out_path,
                 std::optional<std::uint64_t> seed, std::optional<int> workers) {
  const ExperimentConfig cfg = load_with_overrides(config_path, seed, workers);
  const ScenarioGraph graph = cfg.graph();
  const Route route = route_name.empty() ? cfg.sampler().routes.front()
                                         : route_preset(route_name);
  const EnvState state = encode_state(route, speed, cfg.encode);

  if (method == "grid") {
    GridSpec grid;
    grid.steps = cfg.effective_grid_steps();
    const RankedSpecs ranked = grid_search(graph, state, grid, cfg.sim, cfg.reward,
                                           cfg.train.workers);
    if (out_path.empty()) out_path = "grid_results.csv";
    write_file(out_path, ranked_specs_to_csv(ranked, graph));
    std::cout << "evaluated " << ranked.size() << " grid combinations -> " << out_path << "\n";
    return kExitOk;
  }
  if (method == "random") {
    std::mt19937_64 rng(cfg.train.seed);
    RankedSpecs ranked = random_sampling(graph, state, count, rng, cfg.sim, cfg.reward);
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    if (out_path.empty()) out_path = "random_results.csv";
    write_file(out_path, ranked_specs_to_csv(ranked, graph));
    std::cout << "evaluated " << ranked.size() << " random draws -> " << out_path << "\n";
    return kExitOk;
  }
  if (method == "human") {
    const ScenarioSpec spec = human_design(graph);
    const RolloutResult rollout = simulate(spec, state, graph, cfg.sim, cfg.reward);
    RankedSpecs ranked{{spec, compute_reward(rollout, cfg.reward)}};
    if (out_path.empty()) out_path = "human_results.csv";
    write_file(out_path, ranked_specs_to_csv(ranked, graph));
    std::cout << "human design reward " << ranked.front().second
              << (rollout.collision ? " (collision)" : "") << " -> " << out_path << "\n";
    return kExitOk;
  }
  if (method == "independent") {
    if (out_path.empty()) out_path = unique_run_dir("runs/" + cfg.scenario + "_independent");
    const RunResult result = run_training(cfg, out_path, /*independent=*/true);
    std::cout << "independent-policy run directory: " << result.run_dir << "\n";
    std::cout << "final 10-epoch collision rate: "
              << collision_rate(result.records, std::min<int>(10, result.records.size()))
              << "\n";
    return kExitOk;
  }
  throw ConfigError("unknown baseline method '" + method +
                    "' (expected grid, random, human or independent)");
}

int cmd_heatmap(const std::string& checkpoint, const std::string& route_name, double speed,
                const std::string& block, int resolution, const std::string& out_prefix) {
  PolicyParams params;
  ScenarioGraph graph;
  load_checkpoint(checkpoint, params, graph);
  EncodeConfig encode;
  encode.waypoints = (params.layout.input_dim - 1) / 2;
  const EnvState state = encode_state(route_preset(route_name), speed, encode);

  const std::string unit = block == "Theta" ? "deg" : (block == "V" ? "m/s" : "m");
  const HeatmapField field = policy_heatmap(params, state, graph, block, resolution);
  write_file(out_prefix + ".svg", heatmap_to_svg(field, unit));
  write_file(out_prefix + ".csv", heatmap_to_csv(field));
  std::cout << "heatmap for " << block << " written to " << out_prefix << ".svg/.csv\n";
  std::cout << "argmax at " << field.cell_center(field.argmax()) << " " << unit << "\n";
  return kExitOk;
}

int cmd_replay(const std::string& trace_path, std::string out_path,
               const std::string& route_name) {
  const RolloutResult rollout = trace_from_text(read_file(trace_path));
  SimConfig cfg;
  if (out_path.empty()) out_path = trace_path + ".svg";
  if (route_name.empty()) {
    write_file(out_path, trace_to_svg(rollout, cfg.ego, cfg.cyclist));
  } else {
    const Route route = route_preset(route_name);
    write_file(out_path, trace_to_svg(rollout, cfg.ego, cfg.cyclist, &route));
  }
  std::cout << "replay written to " << out_path << "\n";
  return kExitOk;
}

int cmd_presets_list() {
  std::cout << "scenario presets:\n";
  for (const auto& name : preset_names()) {
    const ScenarioGraph g = build_preset(name);
    std::cout << "  " << name << " (";
    for (int k = 0; k < g.block_count(); ++k) {
      std::cout << (k ? ", " : "") << g.blocks[k].name;
    }
    std::cout << ")\n";
  }
  std::cout << "route presets:\n";
  for (const auto& name : route_preset_names()) {
    std::cout << "  " << name << " (" << route_preset(name).length() << " m)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety-critical traffic scenario generation"};
  app.require_subcommand(1);

  std::string config_path, out_path, checkpoint, route, block = "X", method, trace_path;
  double speed = 30.0;
  int episodes = 100, count = 100, resolution = 256;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;

  auto* train_cmd = app.add_subcommand("train", "train the scenario policy");
  train_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
  train_cmd->add_option("--out", out_path, "run directory (default runs/<scenario>)");
  train_cmd->add_option("--seed", seed, "override train.seed");
  train_cmd->add_option("--workers", workers, "override train.workers");

  auto* eval_cmd = app.add_subcommand("eval", "sample scenarios from a checkpoint");
  eval_cmd->add_option("--checkpoint", checkpoint, "policy checkpoint")->required();
  eval_cmd->add_option("--route", route, "route preset name")->required();
  eval_cmd->add_option("--speed", speed, "target speed [km/h]");
  eval_cmd->add_option("--episodes", episodes, "number of sampled scenarios");
  std::uint64_t eval_seed = 7;
  eval_cmd->add_option("--seed", eval_seed, "sampling seed");
  eval_cmd->add_option("--out", out_path, "ranked scenario CSV path");

  auto* baseline_cmd = app.add_subcommand("baseline", "run a comparison method");
  baseline_cmd->add_option("--method", method, "grid | random | human | independent")
      ->required();
  baseline_cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
  baseline_cmd->add_option("--count", count, "random sampling draws");
  baseline_cmd->add_option("--route", route, "route preset (default: first env route)");
  baseline_cmd->add_option("--speed", speed, "target speed [km/h]");
  baseline_cmd->add_option("--out", out_path, "result path");
  baseline_cmd->add_option("--seed", seed, "override train.seed");
  baseline_cmd->add_option("--workers", workers, "override train.workers");

  auto* heatmap_cmd = app.add_subcommand("heatmap", "export block density fields");
  heatmap_cmd->add_option("--checkpoint", checkpoint, "policy checkpoint")->required();
  heatmap_cmd->add_option("--route", route, "route preset name")->required();
  heatmap_cmd->add_option("--speed", speed, "target speed [km/h]");
  heatmap_cmd->add_option("--block", block, "block name (default X)");
  heatmap_cmd->add_option("--resolution", resolution, "grid cells");
  std::string prefix = "heatmap";
  heatmap_cmd->add_option("--out", prefix, "output prefix (.svg/.csv)");

  auto* replay_cmd = app.add_subcommand("replay", "render a recorded trace");
  replay_cmd->add_option("--trace", trace_path, "trace file")->required();
  replay_cmd->add_option("--out", out_path, "SVG path (default <trace>.svg)");
  replay_cmd->add_option("--route", route, "route preset drawn under the trace");

  auto* presets_cmd = app.add_subcommand("presets-list", "list scenario and route presets");

  try {
    app.parse(argc, argv);
    if (train_cmd->parsed()) return cmd_train(config_path, out_path, seed, workers);
    if (eval_cmd->parsed())
      return cmd_eval(checkpoint, route, speed, episodes, eval_seed, out_path);
    if (baseline_cmd->parsed())
      return cmd_baseline(method, config_path, count, route, speed, out_path, seed, workers);
    if (heatmap_cmd->parsed())
      return cmd_heatmap(checkpoint, route, speed, block, resolution, prefix);
    if (replay_cmd->parsed()) return cmd_replay(trace_path, out_path, route);
    if (presets_cmd->parsed()) return cmd_presets_list();
    return kExitConfig;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
